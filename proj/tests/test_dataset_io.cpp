#include <doctest.h>

#include <bit>
#include <filesystem>
#include <fstream>

#include "nnsort/datagen.hpp"
#include "nnsort/dataset_io.hpp"

using namespace nnsort;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  auto dir = fs::temp_directory_path() / "nnsort_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("binary round trip is bit exact") {
  const std::vector<Key> keys{0.1, -2.5, 1e300, -0.0, 5e-324, 3.0};
  const auto p = temp_path("keys.bin");
  io::write_dataset(p, keys);
  CHECK(fs::file_size(p) == keys.size() * 8);
  const auto back = io::read_dataset(p);
  REQUIRE(back.size() == keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(back[i]) == std::bit_cast<std::uint64_t>(keys[i]));
  }
}

TEST_CASE("binary file with a partial record is rejected") {
  const auto p = temp_path("odd.bin");
  write_file(p, "12345");
  CHECK_THROWS_AS(io::read_dataset(p), DataError);
}

TEST_CASE("csv dataset with and without header") {
  const auto with = temp_path("with.csv");
  write_file(with, "key\n5\n1\n9\n");
  CHECK(io::read_dataset(with) == std::vector<Key>{5, 1, 9});

  const auto without = temp_path("without.csv");
  write_file(without, "5\n1.5\n-9e3\n");
  CHECK(io::read_dataset(without) == std::vector<Key>{5, 1.5, -9e3});
}

TEST_CASE("unknown extension is rejected") {
  CHECK_THROWS_AS(io::read_dataset(temp_path("keys.txt")), DataError);
  CHECK_THROWS_AS(io::write_dataset(temp_path("keys.txt"), std::vector<Key>{1.0}), DataError);
}

TEST_CASE("csv write then read reproduces every double exactly") {
  const auto keys = datagen::generate(datagen::Distribution::lognormal, 1000, 5);
  const auto p = temp_path("lognormal.csv");
  io::write_dataset(p, keys);
  CHECK(io::read_dataset(p) == keys);
}
