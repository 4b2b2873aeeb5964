#include "nnsort/analysis.hpp"

#include <cmath>
#include <limits>

#include "nnsort/nn_sort.hpp"

namespace nnsort::analysis {

void CostParams::validate() const {
  if (!(sigma >= 0.0 && sigma < 1.0)) throw ConfigError("sigma must lie in [0, 1)");
  if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("e must lie in [0, 1]");
  if (t < 1) throw ConfigError("t must be >= 1");
  if (!(theta >= 0.0)) throw ConfigError("theta must be non-negative");
  if (!(n >= 0.0)) throw ConfigError("n must be non-negative");
}

double t_best(double n, double theta) {
  if (n <= 0.0) return 0.0;
  if (n == 1.0) return 1.0;
  return theta * n + n;
}

Coefficients coeffs_general(const CostParams& p) {
  p.validate();
  const double s = p.sigma;
  const double s_t = std::pow(s, p.t);
  const double s_t1 = std::pow(s, p.t - 1);

  double c1 = ((1.0 - s) + (1.0 - s_t1) * (p.theta + 1.0)) / (1.0 - s);
  for (int i = 1; i <= p.t; ++i) {
    const double s_i = std::pow(s, i);
    const double s_prev = std::pow(s, i - 1);
    c1 += s_i + (1.0 - p.e) * (s_prev - s_i);
  }
  if (s_t > 0.0) c1 += s_t * std::log(s_t);

  return {c1, s_t + p.e * (s_t + s_t1)};
}

double t_general(const CostParams& p) {
  if (p.n <= 0.0) return 0.0;
  if (p.n == 1.0) return 1.0;
  const auto c = coeffs_general(p);
  return c.c1 * p.n + c.c2 * p.n * std::log(p.n);
}

double t_worst(double n, double theta, double epsilon) {
  if (n <= 0.0) return 0.0;
  if (n == 1.0) return 1.0;
  return theta * epsilon * n + 2.0 * n * std::log(n);
}

double break_even_n(const Coefficients& c) {
  if (c.c2 >= 1.0) return std::numeric_limits<double>::infinity();
  return std::exp(c.c1 / (1.0 - c.c2));
}

double break_even_n(const CostParams& p) { return break_even_n(coeffs_general(p)); }

Reconciliation reconcile(const RunSet& runs, int epsilon, double theta) {
  Reconciliation r;
  const double n = static_cast<double>(runs.input_size);
  r.params.n = n;
  r.params.theta = theta;
  r.params.epsilon = epsilon;
  r.measured_ops = static_cast<double>(runs.counters.operations(static_cast<std::uint64_t>(theta)));
  r.predicted_best = t_best(n, theta);
  r.predicted_worst = t_worst(n, theta, epsilon);

  if (runs.metrics.empty()) {
    r.note = "model bypassed; compared against n ln n";
    r.params.t = 0;
    r.predicted_general = n > 1.0 ? n * std::log(n) : n;
  } else {
    double log_sum = 0.0;
    bool any_zero = false;
    double e_sum = 0.0;
    for (const auto& m : runs.metrics) {
      if (m.sigma <= 0.0) any_zero = true; else log_sum += std::log(m.sigma);
      e_sum += m.out_of_order_rate;
    }
    const auto t = static_cast<double>(runs.metrics.size());
    r.params.sigma = any_zero ? 0.0 : std::exp(log_sum / t);
    r.params.e = e_sum / t;
    r.params.t = static_cast<int>(runs.metrics.size());
    if (r.params.sigma >= 1.0) {
      r.note = "collision rate of 1 is outside the general-case model";
    } else {
      r.coeffs = coeffs_general(r.params);
      r.predicted_general = t_general(r.params);
      r.break_even = break_even_n(r.coeffs);
    }
  }
  auto ratio = [&](double predicted) { return predicted > 0.0 ? r.measured_ops / predicted : 0.0; };
  r.ratio_general = ratio(r.predicted_general);
  r.ratio_best = ratio(r.predicted_best);
  r.ratio_worst = ratio(r.predicted_worst);
  return r;
}

}  // namespace nnsort::analysis
