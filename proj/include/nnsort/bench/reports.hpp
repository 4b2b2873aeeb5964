#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nnsort/analysis.hpp"
#include "nnsort/nn_sort.hpp"

namespace nnsort::bench {

// Order-independent fingerprint of a key multiset. The sum runs over the
// raw bit patterns modulo 2^64 so it is exact regardless of order.
struct Checksum {
  std::size_t count = 0;
  std::uint64_t bit_sum = 0;
  std::uint64_t mixed_sum = 0;
  Key min = 0.0;
  Key max = 0.0;

  static Checksum of(std::span<const Key> keys);
  bool operator==(const Checksum&) const = default;
};

struct SelfCheck {
  bool passed = false;
  std::string method;  // "full" or "checksum"
  std::string detail;
};

// Output must be non-decreasing and a permutation of input. Inputs of at most
// full_limit keys are compared against a reference sort; larger ones by
// checksum.
SelfCheck verify_sorted_permutation(std::span<const Key> input, std::span<const Key> output,
                                    std::size_t full_limit = 100000);

nlohmann::json counters_json(const OpCounters& c, std::uint64_t theta = kModelTheta);
OpCounters counters_from_json(const nlohmann::json& j);

// Deterministic fields at the top level; wall-clock under "wall_clock".
nlohmann::json metrics_json(const RunSet& runs, const SortConfig& cfg, const std::string& predictor);

// Rebuilds the parts of a RunSet that reconcile() reads. Throws DataError.
RunSet runset_from_metrics(const nlohmann::json& metrics);

nlohmann::json costmodel_json(const analysis::CostParams& p);
nlohmann::json reconciliation_json(const analysis::Reconciliation& r);

double median(std::vector<double> values);

}  // namespace nnsort::bench
