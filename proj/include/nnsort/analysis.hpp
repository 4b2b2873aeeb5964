#pragma once

#include <cstdint>
#include <string>

#include "nnsort/core.hpp"

namespace nnsort {
struct RunSet;
}

namespace nnsort::analysis {

// Inputs of the operation-count model. n is real-valued because break-even
// sizes routinely exceed any integer type.
struct CostParams {
  double n = 0.0;
  double theta = static_cast<double>(kModelTheta);  // operations per model pass
  double sigma = 0.0;   // per-iteration collision rate, [0, 1)
  double e = 0.0;       // per-iteration mis-order rate, [0, 1]
  int t = 1;            // completed iterations, >= 1
  int epsilon = 3;      // iteration cap

  // Throws ConfigError unless 0 <= sigma < 1, 0 <= e <= 1, t >= 1, theta >= 0.
  void validate() const;
};

struct Coefficients {
  double c1 = 0.0;  // linear-term coefficient
  double c2 = 0.0;  // n log n coefficient
};

// 1 for n == 1, 0 for n == 0, else theta*n + n.
double t_best(double n, double theta);

// C1 = [(1-s) + (1-s^(t-1))(theta+1)]/(1-s)
//      + sum_{i=1..t} [s^i + (1-e)(s^(i-1) - s^i)] + s^t ln s^t
// C2 = s^t + e(s^t + s^(t-1))
// s^t ln s^t is taken as 0 at s = 0.
Coefficients coeffs_general(const CostParams& p);

// 1 for n == 1, 0 for n == 0, else C1 n + C2 n ln n.
double t_general(const CostParams& p);

// 1 for n == 1, 0 for n == 0, else theta*epsilon*n + 2 n ln n.
double t_worst(double n, double theta, double epsilon);

// e^(C1 / (1 - C2)); +infinity when C2 >= 1 (no finite break-even).
double break_even_n(const CostParams& p);
double break_even_n(const Coefficients& c);

struct Reconciliation {
  CostParams params;        // sigma, e, t, theta and n extracted from a run
  Coefficients coeffs;
  double measured_ops = 0.0;
  double predicted_general = 0.0;
  double predicted_best = 0.0;
  double predicted_worst = 0.0;
  double ratio_general = 0.0;  // measured / predicted
  double ratio_best = 0.0;
  double ratio_worst = 0.0;
  double break_even = 0.0;
  std::string note;            // set when a formula does not apply
};

// sigma: geometric mean of the per-iteration conflict rates; e: mean
// out-of-order rate; t: completed iterations. A run that bypassed the model
// is compared against n ln n.
Reconciliation reconcile(const RunSet& runs, int epsilon, double theta = static_cast<double>(kModelTheta));

}  // namespace nnsort::analysis
