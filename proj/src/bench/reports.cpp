#include "nnsort/bench/reports.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nnsort/rng.hpp"

namespace nnsort::bench {

using nlohmann::json;

Checksum Checksum::of(std::span<const Key> keys) {
  Checksum c;
  c.count = keys.size();
  if (keys.empty()) return c;
  c.min = keys.front();
  c.max = keys.front();
  for (Key k : keys) {
    const auto bits = std::bit_cast<std::uint64_t>(k);
    c.bit_sum += bits;
    c.mixed_sum += mix64(bits);
    c.min = std::min(c.min, k);
    c.max = std::max(c.max, k);
  }
  return c;
}

SelfCheck verify_sorted_permutation(std::span<const Key> input, std::span<const Key> output,
                                    std::size_t full_limit) {
  SelfCheck r;
  r.method = input.size() <= full_limit ? "full" : "checksum";
  if (input.size() != output.size()) {
    r.detail = "output has " + std::to_string(output.size()) + " keys, input " + std::to_string(input.size());
    return r;
  }
  const auto unsorted = std::is_sorted_until(output.begin(), output.end());
  if (unsorted != output.end()) {
    r.detail = "output descends at index " + std::to_string(unsorted - output.begin());
    return r;
  }
  if (r.method == "full") {
    std::vector<Key> reference(input.begin(), input.end());
    std::sort(reference.begin(), reference.end());
    if (!std::equal(reference.begin(), reference.end(), output.begin())) {
      r.detail = "output differs from reference sort";
      return r;
    }
  } else if (!(Checksum::of(input) == Checksum::of(output))) {
    r.detail = "output checksum differs from input checksum";
    return r;
  }
  r.passed = true;
  return r;
}

json counters_json(const OpCounters& c, std::uint64_t theta) {
  return {
      {"comparisons", c.comparisons},
      {"moves", c.moves},
      {"model_invocations", c.model_invocations},
      {"insert_shifts", c.insert_shifts},
      {"insertions", c.insertions},
      {"operations", c.operations(theta)},
  };
}

OpCounters counters_from_json(const json& j) {
  OpCounters c;
  c.comparisons = j.at("comparisons").get<std::uint64_t>();
  c.moves = j.at("moves").get<std::uint64_t>();
  c.model_invocations = j.at("model_invocations").get<std::uint64_t>();
  c.insert_shifts = j.at("insert_shifts").get<std::uint64_t>();
  c.insertions = j.value("insertions", std::uint64_t{0});
  return c;
}

json metrics_json(const RunSet& runs, const SortConfig& cfg, const std::string& predictor) {
  json iterations = json::array();
  for (const auto& m : runs.metrics) {
    iterations.push_back({
        {"iteration", m.iteration_index},
        {"input_size", m.input_size},
        {"conflict_size", m.conflict_size},
        {"sigma", m.sigma},
        {"out_of_order_rate", m.out_of_order_rate},
    });
  }
  const PhaseBreakdown breakdown = phase_breakdown(runs);
  json phases = json::object();
  json phase_seconds = json::object();
  for (std::size_t i = 0; i < kPhaseCount; ++i) {
    const auto name = std::string(phase_name(static_cast<Phase>(i)));
    phases[name] = counters_json(breakdown.phases[i].counters);
    phase_seconds[name] = breakdown.phases[i].seconds;
  }
  return {
      {"n", runs.input_size},
      {"predictor", predictor},
      {"config", {{"m", cfg.m}, {"tau", cfg.tau}, {"epsilon", cfg.epsilon}}},
      {"theta", kModelTheta},
      {"model_bypassed", runs.model_bypassed},
      {"iterations", iterations},
      {"final_conflict_size", runs.final_conflicts.size()},
      {"final_conflict_fraction", runs.input_size ? static_cast<double>(runs.final_conflicts.size()) /
                                                        static_cast<double>(runs.input_size)
                                                  : 0.0},
      {"counters", counters_json(runs.counters)},
      {"phases", phases},
      {"wall_clock", {{"total_seconds", breakdown.total_seconds}, {"phases", phase_seconds}}},
  };
}

RunSet runset_from_metrics(const json& metrics) {
  try {
    RunSet rs;
    rs.input_size = metrics.at("n").get<std::size_t>();
    rs.model_bypassed = metrics.value("model_bypassed", false);
    for (const auto& it : metrics.at("iterations")) {
      IterationMetrics m;
      m.iteration_index = it.at("iteration").get<std::size_t>();
      m.input_size = it.at("input_size").get<std::size_t>();
      m.conflict_size = it.at("conflict_size").get<std::size_t>();
      m.sigma = it.at("sigma").get<double>();
      m.out_of_order_rate = it.at("out_of_order_rate").get<double>();
      rs.metrics.push_back(m);
    }
    rs.counters = counters_from_json(metrics.at("counters"));
    return rs;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed metrics JSON: ") + e.what());
  }
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json costmodel_json(const analysis::CostParams& p) {
  const auto c = analysis::coeffs_general(p);
  const double be = analysis::break_even_n(c);
  json j = {
      {"params", {{"n", p.n}, {"theta", p.theta}, {"sigma", p.sigma}, {"e", p.e}, {"t", p.t}, {"epsilon", p.epsilon}}},
      {"c1", c.c1},
      {"c2", c.c2},
      {"break_even_n", finite_or_null(be)},
      {"break_even_finite", std::isfinite(be)},
  };
  if (!std::isfinite(be)) {
    j["message"] = c.c2 >= 1.0 ? "no finite break-even (C2 >= 1)" : "break-even exceeds double range";
  }
  if (p.n > 0.0) {
    j["t_general"] = analysis::t_general(p);
    j["n_log_n"] = p.n > 1.0 ? p.n * std::log(p.n) : 0.0;
    j["t_best"] = analysis::t_best(p.n, p.theta);
    j["t_worst"] = analysis::t_worst(p.n, p.theta, p.epsilon);
  }
  return j;
}

json reconciliation_json(const analysis::Reconciliation& r) {
  json j = {
      {"n", r.params.n},
      {"theta", r.params.theta},
      {"sigma", r.params.sigma},
      {"e", r.params.e},
      {"t", r.params.t},
      {"epsilon", r.params.epsilon},
      {"c1", r.coeffs.c1},
      {"c2", r.coeffs.c2},
      {"break_even_n", finite_or_null(r.break_even)},
      {"measured_ops", r.measured_ops},
      {"predicted_general", r.predicted_general},
      {"predicted_best", r.predicted_best},
      {"predicted_worst", r.predicted_worst},
      {"ratio_general", r.ratio_general},
      {"ratio_best", r.ratio_best},
      {"ratio_worst", r.ratio_worst},
  };
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace nnsort::bench
