#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "nnsort/core.hpp"
#include "nnsort/dataset_io.hpp"

namespace nnsort::datagen {

enum class Distribution { uniform, normal, lognormal };

std::string_view to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);

struct DistParams {
  double lo = 0.0;     // uniform support [lo, hi)
  double hi = 1.0;
  double mu = 0.0;     // normal mean / log-normal log-mean
  double sigma = 1.0;  // normal stddev / log-normal log-stddev

  void validate(Distribution d) const;
};

// Deterministic for (dist, n, seed, params). Uniform draws use 53-bit
// SplitMix64 doubles; normal variates come from Box-Muller, one per pair of
// uniforms (cosine branch).
std::vector<Key> generate(Distribution dist, std::size_t n, std::uint64_t seed, const DistParams& params = {});

// floor((1-f) n) uniform [0,1) keys followed by standard normal keys, then a
// seeded Fisher-Yates shuffle.
std::vector<Key> noisy_mix(std::size_t n, double noise_fraction, std::uint64_t seed);
std::size_t noisy_count(std::size_t n, double noise_fraction);

struct CsvKeys {
  std::vector<Key> keys;
  std::size_t row_count = 0;
};

CsvKeys load_csv_keys(const std::filesystem::path& path, const io::ColumnRef& column);

}  // namespace nnsort::datagen
