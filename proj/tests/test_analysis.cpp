#include <doctest.h>

#include <cmath>
#include <limits>

#include "cost_reference.hpp"
#include "nnsort/analysis.hpp"
#include "nnsort/datagen.hpp"
#include "nnsort/nn_sort.hpp"
#include "nnsort/rng.hpp"

using namespace nnsort;
using namespace nnsort::analysis;

namespace {

bool rel_close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

CostParams params(double sigma, double e, int t, double theta, double n = 0.0) {
  CostParams p;
  p.sigma = sigma;
  p.e = e;
  p.t = t;
  p.theta = theta;
  p.n = n;
  return p;
}

}  // namespace

TEST_CASE("t_best") {
  CHECK(t_best(1, 369) == 1);
  CHECK(t_best(10, 369) == 3700);
  CHECK(t_best(0, 369) == 0);
}

TEST_CASE("t_worst") {
  CHECK(t_worst(1, 369, 3) == 1);
  CHECK(t_worst(0, 369, 3) == 0);
  CHECK(t_worst(1024, 0, 3) == doctest::Approx(14195.654257867679937).epsilon(1e-14));
  for (double n : {2.0, 10.0, 1e3, 1e6}) CHECK(t_worst(2 * n, 0, 3) > 2 * t_worst(n, 0, 3));
}

TEST_CASE("coefficients in the sigma -> 0 limit") {
  const auto c = coeffs_general(params(0.0, 0.0, 1, 0.0));
  CHECK(c.c1 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.c2 == 0.0);
  CHECK(t_general(params(0.0, 0.0, 1, 0.0, 100)) == doctest::Approx(200.0));
  CHECK(break_even_n(params(0.0, 0.0, 1, 0.0)) == doctest::Approx(7.3890560989306502272).epsilon(1e-14));
  CHECK(t_general(params(0.0, 0.0, 1, 0.0, 1)) == 1);
}

TEST_CASE("C2 equals sigma when e = 0 and t = 1") {
  for (double s : {0.01, 0.3, 0.77}) CHECK(coeffs_general(params(s, 0.0, 1, 369)).c2 == doctest::Approx(s));
}

TEST_CASE("t_general is linear when C2 = 0") {
  const auto p = params(0.0, 0.4, 2, 50);
  for (double n : {10.0, 1e3, 1e5}) {
    auto a = p, b = p;
    a.n = n;
    b.n = 2 * n;
    CHECK(t_general(b) / t_general(a) == doctest::Approx(2.0));
  }
}

TEST_CASE("frozen high-precision values") {
  struct Row {
    double s, e;
    int t;
    double theta, c1, c2, be;
  };
  const Row rows[] = {
      {0.5, 0.2, 2, 369, 372.00342640972002734, 0.4, 1.8410216598928174069e+269},
      {0.1, 0.05, 3, 369, 409.05314224472101992, 0.00155, 8.4198956162377846744e+177},
      {0.3, 0.0, 1, 0, 1.6388081587022192045, 0.3, 10.39322875063334685},
      {0.9, 0.5, 3, 10, 24.24407655225633425, 1.4985, std::numeric_limits<double>::infinity()},
  };
  for (const auto& r : rows) {
    const auto c = coeffs_general(params(r.s, r.e, r.t, r.theta));
    CHECK(rel_close(c.c1, r.c1, 1e-12));
    CHECK(rel_close(c.c2, r.c2, 1e-12));
    CHECK(rel_close(break_even_n(params(r.s, r.e, r.t, r.theta)), r.be, 1e-9));
  }
  CHECK(rel_close(t_general(params(0.5, 0.2, 2, 369, 100)), 37384.549448411526392, 1e-12));
  CHECK(rel_close(t_general(params(0.5, 0.2, 2, 369, 1e6)), 377529630.63290573709, 1e-12));
  CHECK(rel_close(t_general(params(0.1, 0.05, 3, 369, 100)), 40906.028025850930146, 1e-12));
  CHECK(rel_close(t_general(params(0.3, 0.0, 1, 0, 100)), 302.03592144986465638, 1e-12));
  CHECK(rel_close(t_general(params(0.3, 0.0, 1, 0, 1e6)), 5783461.3260915012823, 1e-12));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(coeffs_general(params(1.0, 0.1, 1, 1)), ConfigError);
  CHECK_THROWS_AS(coeffs_general(params(-0.1, 0.1, 1, 1)), ConfigError);
  CHECK_THROWS_AS(coeffs_general(params(0.5, 1.5, 1, 1)), ConfigError);
  CHECK_THROWS_AS(coeffs_general(params(0.5, 0.5, 0, 1)), ConfigError);
  CHECK(std::isinf(break_even_n(Coefficients{3.0, 1.0})));
}

TEST_CASE("agreement with the closed-form reference over random parameters") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const double s = rng.next_double() * 0.99;
    const double e = rng.next_double();
    const int t = 1 + static_cast<int>(rng.next_below(6));
    const double theta = rng.next_double() * 1000.0;
    const double n = std::exp(rng.next_double() * 40.0) + 1.0;
    const auto c = coeffs_general(params(s, e, t, theta));
    const auto ref = cost_reference::coeffs(s, e, t, theta);
    CHECK(rel_close(c.c1, static_cast<double>(ref.c1), 1e-9));
    CHECK(rel_close(c.c2, static_cast<double>(ref.c2), 1e-9));
    CHECK(rel_close(t_general(params(s, e, t, theta, n)),
                    static_cast<double>(cost_reference::general(n, s, e, t, theta)), 1e-9));
  }
}

TEST_CASE("break-even separates wins from losses") {
  SplitMix64 rng(99);
  int checked = 0;
  while (checked < 300) {
    auto p = params(rng.next_double() * 0.95, rng.next_double() * 0.6, 1 + static_cast<int>(rng.next_below(4)),
                    rng.next_double() * 400.0);
    const double be = break_even_n(p);
    if (!(be < 1e300)) continue;  // keep n log n representable
    ++checked;
    p.n = 2 * be;
    CHECK(t_general(p) < p.n * std::log(p.n));
    if (be / 2 > 1) {
      p.n = be / 2;
      CHECK_FALSE(t_general(p) < p.n * std::log(p.n));
    }
  }
}

TEST_CASE("reconcile against best and worst case runs") {
  std::vector<Key> keys(10000);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<Key>((i * 7919) % 10007);

  const auto best = nn_sort(keys, Predictor::oracle(keys), SortConfig{2.0, 1000, 3});
  const auto rb = reconcile(best.runs, 3);
  CHECK(rb.params.t == 1);
  CHECK(rb.params.sigma == 0.0);
  CHECK(rb.ratio_best >= 0.5);
  CHECK(rb.ratio_best <= 2.0);

  const auto worst = nn_sort(keys, Predictor::constant(0.5), SortConfig{2.0, 1000, 3});
  const auto rw = reconcile(worst.runs, 3);
  CHECK(rw.params.t == 3);
  CHECK(rw.ratio_worst >= 0.5);
  CHECK(rw.ratio_worst <= 2.0);

  const auto tiny = nn_sort(keys, Predictor::constant(0.5), SortConfig{2.0, 20000, 3});
  const auto rt = reconcile(tiny.runs, 3);
  CHECK_FALSE(rt.note.empty());
}
