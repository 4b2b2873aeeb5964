#include "nnsort/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nnsort {

namespace {

std::string describe_bad_key(std::size_t index, double value) {
  std::ostringstream os;
  os << "non-finite key " << value << " at index " << index;
  return os.str();
}

}  // namespace

InvalidKeyError::InvalidKeyError(std::size_t index, double value)
    : std::invalid_argument(describe_bad_key(index, value)), index_(index) {}

void SortConfig::validate() const {
  if (!(m >= 1.0) || !std::isfinite(m)) {
    throw ConfigError("relaxation factor m must be a finite value >= 1");
  }
  if (epsilon < 1) {
    throw ConfigError("iteration cap epsilon must be >= 1");
  }
}

OpCounters& OpCounters::operator+=(const OpCounters& other) noexcept {
  comparisons += other.comparisons;
  moves += other.moves;
  model_invocations += other.model_invocations;
  insert_shifts += other.insert_shifts;
  insertions += other.insertions;
  return *this;
}

void check_keys(std::span<const double> data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) throw InvalidKeyError(i, data[i]);
  }
}

std::vector<Key> validate_keys(std::span<const double> data) {
  check_keys(data);
  return {data.begin(), data.end()};
}

double normalize(Key x, Key lo, Key hi) {
  if (!(lo < hi)) throw ConfigError("normalization bounds require lo < hi");
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

std::size_t count_descents(std::span<const Key> keys) noexcept {
  std::size_t descents = 0;
  for (std::size_t j = 1; j < keys.size(); ++j) {
    if (keys[j] < keys[j - 1]) ++descents;
  }
  return descents;
}

}  // namespace nnsort
