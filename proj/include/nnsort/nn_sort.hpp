#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "nnsort/core.hpp"
#include "nnsort/model.hpp"

namespace nnsort {

// Slot for a logit in an output array of ceil(m * batch_size) slots:
// round(logit * (slots - 1)), clamped into range.
std::size_t position(double logit, double m, std::size_t batch_size);
std::size_t output_slots(double m, std::size_t batch_size);

struct IterationResult {
  SparseRun run;
  std::vector<Key> conflicts;  // in input order
  IterationMetrics metrics;
};

// One mapping pass. Each key goes to its predicted slot if that slot is still
// empty, otherwise to the conflict array. Charges one model invocation and
// one move per key. Throws std::invalid_argument on empty input.
IterationResult map_iteration(std::span<const Key> input, const Predictor& p, double m,
                              OpCounters& counters, std::size_t iteration_index = 1);

enum class Phase : std::size_t { approximate_ordering = 0, handling_conflicts = 1, merging = 2 };
inline constexpr std::size_t kPhaseCount = 3;
std::string_view phase_name(Phase phase);

struct PhaseReport {
  OpCounters counters;
  double seconds = 0.0;
};

struct RunSet {
  std::size_t input_size = 0;
  std::vector<SparseRun> runs;         // o_1 .. o_t
  std::vector<Key> final_conflicts;    // sorted, before polish
  std::vector<IterationMetrics> metrics;
  OpCounters counters;                 // sum of the phase counters
  std::array<PhaseReport, kPhaseCount> phases{};
  bool model_bypassed = false;         // input size <= tau

  std::size_t iterations() const noexcept { return runs.size(); }
};

struct SortResult {
  std::vector<Key> output;
  RunSet runs;
};

// Iterative learned sort. While the working set is larger than tau and fewer
// than epsilon passes have run, map it through the predictor and carry the
// collisions into the next pass. The last conflict array is quicksorted and
// merged with every run. Inputs of at most tau keys are quicksorted directly.
// Throws InvalidKeyError or ConfigError.
SortResult nn_sort(std::span<const Key> input, const Predictor& p, const SortConfig& cfg = {});

struct PhaseBreakdown {
  std::array<PhaseReport, kPhaseCount> phases{};
  OpCounters total;
  double total_seconds = 0.0;
  std::uint64_t operations(Phase phase, std::uint64_t theta = kModelTheta) const {
    return phases[static_cast<std::size_t>(phase)].counters.operations(theta);
  }
};

// First pass, later passes plus the fallback sort, and polish.
PhaseBreakdown phase_breakdown(const RunSet& runs);

}  // namespace nnsort
