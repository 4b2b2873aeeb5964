#include "nnsort/datagen.hpp"

#include <cmath>
#include <numbers>

#include "nnsort/rng.hpp"

namespace nnsort::datagen {

namespace {

double standard_normal(SplitMix64& rng) {
  const double u1 = 1.0 - rng.next_double();  // (0, 1]
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::normal: return "normal";
    case Distribution::lognormal: return "lognormal";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::uniform;
  if (name == "normal") return Distribution::normal;
  if (name == "lognormal" || name == "log-normal") return Distribution::lognormal;
  return std::nullopt;
}

void DistParams::validate(Distribution d) const {
  if (d == Distribution::uniform) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) throw ConfigError("uniform bounds need lo < hi");
  } else {
    if (!std::isfinite(mu)) throw ConfigError("mu must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  }
}

std::vector<Key> generate(Distribution dist, std::size_t n, std::uint64_t seed, const DistParams& params) {
  params.validate(dist);
  SplitMix64 rng(seed);
  std::vector<Key> out(n);
  for (auto& k : out) {
    switch (dist) {
      case Distribution::uniform:
        k = params.lo + (params.hi - params.lo) * rng.next_double();
        break;
      case Distribution::normal:
        k = params.mu + params.sigma * standard_normal(rng);
        break;
      case Distribution::lognormal:
        k = std::exp(params.mu + params.sigma * standard_normal(rng));
        break;
    }
  }
  return out;
}

std::size_t noisy_count(std::size_t n, double noise_fraction) {
  if (!(noise_fraction >= 0.0 && noise_fraction <= 1.0)) {
    throw ConfigError("noise fraction must lie in [0, 1]");
  }
  // floor((1-f) n) uniform keys == n - ceil(f n); the slack absorbs f n
  // landing a hair above an integer (0.45 * 1e5 and friends).
  const double noisy = std::ceil(noise_fraction * static_cast<double>(n) - 1e-9);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, noisy)));
}

std::vector<Key> noisy_mix(std::size_t n, double noise_fraction, std::uint64_t seed) {
  const std::size_t noisy = noisy_count(n, noise_fraction);
  SplitMix64 rng(seed);
  std::vector<Key> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n - noisy; ++i) out.push_back(rng.next_double());
  for (std::size_t i = 0; i < noisy; ++i) out.push_back(standard_normal(rng));
  for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[rng.next_below(i)]);
  return out;
}

CsvKeys load_csv_keys(const std::filesystem::path& path, const io::ColumnRef& column) {
  auto col = io::read_csv_column(path, column);
  return {std::move(col.keys), col.row_count};
}

}  // namespace nnsort::datagen
