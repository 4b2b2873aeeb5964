#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnsort {

// A sort key. Always finite; the empty-slot marker of a sparse run is a
// separate tag, never a key value.
using Key = double;

// One slot of a roughly ordered output array. std::nullopt marks an empty slot.
using Slot = std::optional<Key>;
using SparseRun = std::vector<Slot>;

// Operations charged for one forward pass through the 1-32-8-4-1 network.
// Equals the network's parameter count (one multiply-accumulate each).
inline constexpr std::uint64_t kModelTheta = 369;

class InvalidKeyError : public std::invalid_argument {
 public:
  InvalidKeyError(std::size_t index, double value);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File or content problems with datasets, models and reports.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SortConfig {
  double m = 2.0;             // relaxation factor, output array holds ceil(m * input) slots
  std::size_t tau = 1000;     // stop iterating once the conflict array is this small
  std::size_t epsilon = 3;    // iteration cap

  // Throws ConfigError unless m >= 1 and epsilon >= 1.
  void validate() const;
};

// Operation counts for one sort call. A model invocation is reported
// separately and weighted by theta when totals are formed.
struct OpCounters {
  std::uint64_t comparisons = 0;
  std::uint64_t moves = 0;
  std::uint64_t model_invocations = 0;
  std::uint64_t insert_shifts = 0;
  // Number of binary-search insertions during polish. Each one is also
  // counted as a move, so it does not enter operations().
  std::uint64_t insertions = 0;

  OpCounters& operator+=(const OpCounters& other) noexcept;
  friend OpCounters operator+(OpCounters a, const OpCounters& b) noexcept { return a += b; }
  bool operator==(const OpCounters&) const = default;

  std::uint64_t operations(std::uint64_t theta = kModelTheta) const noexcept {
    return comparisons + moves + insert_shifts + theta * model_invocations;
  }
};

struct IterationMetrics {
  std::size_t iteration_index = 0;  // 1-based
  std::size_t input_size = 0;
  std::size_t conflict_size = 0;
  double sigma = 0.0;               // conflict_size / input_size
  double out_of_order_rate = 0.0;   // descents in the compacted run / placed keys

  bool operator==(const IterationMetrics&) const = default;
};

// Returns the keys unchanged if all are finite, else throws InvalidKeyError
// naming the first offending index.
std::vector<Key> validate_keys(std::span<const double> data);

// Same check without the copy.
void check_keys(std::span<const double> data);

// clamp((x - lo) / (hi - lo), 0, 1). Throws ConfigError if lo >= hi.
double normalize(Key x, Key lo, Key hi);

// Number of positions j > 0 with keys[j] < keys[j-1].
std::size_t count_descents(std::span<const Key> keys) noexcept;

}  // namespace nnsort
