#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nnsort/analysis.hpp"
#include "nnsort/core.hpp"
#include "nnsort/datagen.hpp"
#include "nnsort/model.hpp"

namespace nnsort::bench {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsageError = 1, kDataError = 2, kInvariantViolation = 3 };

// Raised when a produced result fails its own verification.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Which position model a command should use.
struct PredictorSpec {
  std::string kind = "mlp";  // mlp | oracle | constant | random
  std::optional<fs::path> model_path;
  double constant = 0.5;
  std::uint64_t seed = 1;
};

// Builds the predictor. "oracle" ranks against the given keys.
Predictor make_predictor(const PredictorSpec& spec, std::span<const Key> keys);

struct TrainOptions {
  fs::path dataset;
  fs::path model_out;
  std::optional<fs::path> loss_out;  // default: <model_out>.loss.csv
  TrainConfig config;
};

struct SortOptions {
  fs::path dataset;
  PredictorSpec predictor;
  SortConfig config;
  std::optional<fs::path> out;
  std::optional<fs::path> metrics_out;
  bool self_check = true;
};

struct BenchOptions {
  std::vector<std::string> distributions{"uniform", "normal", "lognormal"};
  std::vector<std::size_t> sizes{100000};
  std::vector<std::string> algorithms{"nn_sort", "single_pass", "quicksort", "heapsort", "mergesort"};
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  double noise = 0.45;  // used by the "noisy" distribution
  SortConfig config;
  TrainConfig train;
  std::size_t train_n = 0;  // 0: largest benchmark size, capped at 1e5
  std::optional<fs::path> model_path;
  std::optional<fs::path> data_path;  // benchmark a dataset file instead of synthetic data
  std::string column = "0";
  fs::path out = "bench.csv";
  bool parallel = false;
};

struct IterationsOptions {
  fs::path dataset;
  PredictorSpec predictor;
  std::size_t eps_min = 1;
  std::size_t eps_max = 5;
  double m = 2.0;
  std::size_t tau = 1000;
  std::optional<fs::path> out;
};

struct CostModelOptions {
  std::optional<fs::path> metrics;
  analysis::CostParams params;
  std::optional<fs::path> out;
};

struct GenOptions {
  std::string dist = "uniform";  // uniform | normal | lognormal | noisy
  std::size_t n = 100000;
  std::uint64_t seed = 1;
  datagen::DistParams params;
  double noise = 0.45;
  fs::path out;
};

// Each command writes its artifacts, logs to `log`, and returns an ExitCode.
int cmd_train(const TrainOptions& opt, std::ostream& log);
int cmd_sort(const SortOptions& opt, std::ostream& log);
int cmd_bench(const BenchOptions& opt, std::ostream& log);
int cmd_iterations(const IterationsOptions& opt, std::ostream& log);
int cmd_costmodel(const CostModelOptions& opt, std::ostream& out, std::ostream& log);
int cmd_gen(const GenOptions& opt, std::ostream& log);

}  // namespace nnsort::bench
