#include "nnsort/nn_sort.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "nnsort/baselines.hpp"
#include "nnsort/polish.hpp"

namespace nnsort {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::size_t output_slots(double m, std::size_t batch_size) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m * static_cast<double>(batch_size))));
}

std::size_t position(double logit, double m, std::size_t batch_size) {
  const std::size_t slots = output_slots(m, batch_size);
  const double x = std::clamp(logit, 0.0, 1.0) * static_cast<double>(slots - 1);
  const auto idx = static_cast<std::size_t>(std::llround(x));
  return std::min(idx, slots - 1);
}

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::approximate_ordering: return "approximate_ordering";
    case Phase::handling_conflicts: return "handling_conflicts";
    case Phase::merging: return "merging";
  }
  return "unknown";
}

IterationResult map_iteration(std::span<const Key> input, const Predictor& p, double m,
                              OpCounters& counters, std::size_t iteration_index) {
  if (input.empty()) throw std::invalid_argument("map_iteration requires a non-empty input");
  IterationResult out;
  out.run.assign(output_slots(m, input.size()), std::nullopt);

  for (const Key key : input) {
    const double logit = forward(p, key, counters);
    Slot& slot = out.run[position(logit, m, input.size())];
    if (!slot) {
      slot = key;
    } else {
      out.conflicts.push_back(key);
    }
    ++counters.moves;
  }

  // Metrics only; not charged to the counters.
  std::size_t placed = 0;
  std::size_t descents = 0;
  const Key* prev = nullptr;
  for (const Slot& slot : out.run) {
    if (!slot) continue;
    if (prev && *slot < *prev) ++descents;
    prev = &*slot;
    ++placed;
  }
  auto& mt = out.metrics;
  mt.iteration_index = iteration_index;
  mt.input_size = input.size();
  mt.conflict_size = out.conflicts.size();
  mt.sigma = static_cast<double>(mt.conflict_size) / static_cast<double>(mt.input_size);
  mt.out_of_order_rate = static_cast<double>(descents) / static_cast<double>(std::max<std::size_t>(1, placed));
  return out;
}

SortResult nn_sort(std::span<const Key> input, const Predictor& p, const SortConfig& cfg) {
  cfg.validate();
  check_keys(input);

  SortResult result;
  RunSet& rs = result.runs;
  rs.input_size = input.size();
  auto& conflicts_phase = rs.phases[static_cast<std::size_t>(Phase::handling_conflicts)];
  auto& merge_phase = rs.phases[static_cast<std::size_t>(Phase::merging)];

  std::vector<Key> w(input.begin(), input.end());
  if (w.size() <= cfg.tau) {
    rs.model_bypassed = true;
    const auto t0 = Clock::now();
    quicksort_in_place(w, conflicts_phase.counters);
    conflicts_phase.seconds = seconds_since(t0);
    rs.counters = conflicts_phase.counters;
    rs.final_conflicts = w;
    result.output = std::move(w);
    return result;
  }

  // The published loop guard reads "0 < i < epsilon" with i starting at 0,
  // which would never run; the cap is applied as i < epsilon.
  std::size_t i = 0;
  while (i < cfg.epsilon && w.size() > cfg.tau) {
    auto& phase = rs.phases[static_cast<std::size_t>(i == 0 ? Phase::approximate_ordering
                                                            : Phase::handling_conflicts)];
    const auto t0 = Clock::now();
    IterationResult it = map_iteration(w, p, cfg.m, phase.counters, i + 1);
    phase.seconds += seconds_since(t0);
    rs.runs.push_back(std::move(it.run));
    rs.metrics.push_back(it.metrics);
    w = std::move(it.conflicts);
    ++i;
  }

  auto t0 = Clock::now();
  quicksort_in_place(w, conflicts_phase.counters);
  conflicts_phase.seconds += seconds_since(t0);
  rs.final_conflicts = w;

  t0 = Clock::now();
  result.output = merge(rs.runs, std::move(w), merge_phase.counters);
  merge_phase.seconds = seconds_since(t0);

  for (const auto& ph : rs.phases) rs.counters += ph.counters;
  return result;
}

PhaseBreakdown phase_breakdown(const RunSet& runs) {
  PhaseBreakdown out;
  out.phases = runs.phases;
  for (const auto& ph : runs.phases) {
    out.total += ph.counters;
    out.total_seconds += ph.seconds;
  }
  return out;
}

}  // namespace nnsort
