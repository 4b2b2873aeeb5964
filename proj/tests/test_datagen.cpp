#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "nnsort/datagen.hpp"
#include "nnsort/dataset_io.hpp"

using namespace nnsort;
using namespace nnsort::datagen;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  auto dir = fs::temp_directory_path() / "nnsort_datagen_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("generate basics") {
  CHECK(generate(Distribution::uniform, 0, 1).empty());

  const auto u = generate(Distribution::uniform, 1000000, 1);
  const double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(mean - 0.5) < 0.01);
  CHECK(*std::min_element(u.begin(), u.end()) >= 0.0);
  CHECK(*std::max_element(u.begin(), u.end()) < 1.0);

  const auto l = generate(Distribution::lognormal, 1000000, 1);
  CHECK(std::all_of(l.begin(), l.end(), [](double x) { return x > 0.0 && std::isfinite(x); }));

  const auto n = generate(Distribution::normal, 200000, 4);
  const double nm = std::accumulate(n.begin(), n.end(), 0.0) / static_cast<double>(n.size());
  double var = 0.0;
  for (double x : n) var += (x - nm) * (x - nm);
  var /= static_cast<double>(n.size());
  CHECK(std::abs(nm) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("generation is deterministic and seed dependent") {
  for (auto d : {Distribution::uniform, Distribution::normal, Distribution::lognormal}) {
    CHECK(generate(d, 1000, 77) == generate(d, 1000, 77));
    CHECK(generate(d, 1000, 77) != generate(d, 1000, 78));
  }
  // Pinned values guard against silent changes of the generator. The first
  // is the well-known first SplitMix64 output for seed 0 (0xe220a8397b1dcdaf).
  CHECK(generate(Distribution::uniform, 3, 0) ==
        std::vector<Key>{0.88331080821364261, 0.43152799704850997, 0.026433771592597743});
  CHECK(generate(Distribution::normal, 3, 0) ==
        std::vector<Key>{-1.8839083333524405, 0.22760793546360525, -0.22143788059715477});
}

TEST_CASE("distribution parameters") {
  DistParams p;
  p.lo = -5;
  p.hi = -4;
  const auto u = generate(Distribution::uniform, 1000, 1, p);
  CHECK(std::all_of(u.begin(), u.end(), [](double x) { return x >= -5 && x < -4; }));
  DistParams bad;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(generate(Distribution::normal, 10, 1, bad), ConfigError);
  DistParams flat;
  flat.lo = flat.hi = 1.0;
  CHECK_THROWS_AS(generate(Distribution::uniform, 10, 1, flat), ConfigError);
}

TEST_CASE("distribution names") {
  CHECK(parse_distribution("lognormal") == Distribution::lognormal);
  CHECK_FALSE(parse_distribution("zipf").has_value());
  CHECK(to_string(Distribution::normal) == "normal");
}

TEST_CASE("noisy mix counts") {
  CHECK(noisy_count(100000, 0.45) == 45000);
  CHECK(noisy_count(100, 0.0) == 0);
  CHECK(noisy_count(100, 1.0) == 100);
  CHECK(noisy_count(10, 0.15) == 2);  // floor(8.5) uniform keys

  const auto pure_uniform = noisy_mix(5000, 0.0, 3);
  CHECK(std::all_of(pure_uniform.begin(), pure_uniform.end(), [](double x) { return x >= 0 && x < 1; }));
  const auto pure_normal = noisy_mix(5000, 1.0, 3);
  CHECK(std::count_if(pure_normal.begin(), pure_normal.end(), [](double x) { return x < 0; }) > 2000);

  const auto mix = noisy_mix(100000, 0.45, 9);
  CHECK(mix.size() == 100000);
  CHECK(mix == noisy_mix(100000, 0.45, 9));
  CHECK_THROWS_AS(noisy_mix(10, 1.5, 1), ConfigError);
}

TEST_CASE("csv ingestion by column") {
  const auto p = temp_path("events.csv");
  {
    std::ofstream out(p);
    out << "id,timestamp,word\n1,5,cat\n2,1,dog\n3,9,owl\n";
  }
  const auto by_name = load_csv_keys(p, std::string("timestamp"));
  CHECK(by_name.keys == std::vector<Key>{5, 1, 9});
  CHECK(by_name.row_count == 3);
  CHECK(load_csv_keys(p, std::size_t{0}).keys == std::vector<Key>{1, 2, 3});

  try {
    load_csv_keys(p, std::string("time"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("timestamp") != std::string::npos);
    CHECK(msg.find("word") != std::string::npos);
  }
  try {
    load_csv_keys(p, std::size_t{2});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_csv_keys(temp_path("missing.csv"), std::size_t{0}), DataError);
}

TEST_CASE("1e6 keys round-trip between csv and binary") {
  const auto keys = generate(Distribution::normal, 1000000, 13);
  const auto csv = temp_path("million.csv");
  const auto bin = temp_path("million.bin");
  io::write_dataset(csv, keys);
  io::write_dataset(bin, keys);
  const auto from_csv = load_csv_keys(csv, std::string("key"));
  CHECK(from_csv.row_count == keys.size());
  CHECK(from_csv.keys == io::read_dataset(bin));
  CHECK(from_csv.keys == keys);
}
