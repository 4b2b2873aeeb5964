#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "nnsort/core.hpp"

namespace nnsort {

namespace mlp_layout {

inline constexpr std::array<std::size_t, 5> kWidths{1, 32, 8, 4, 1};

constexpr std::size_t layer_size(std::size_t l) { return kWidths[l] * kWidths[l + 1] + kWidths[l + 1]; }

constexpr std::size_t layer_offset(std::size_t l) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < l; ++i) off += layer_size(i);
  return off;
}

}  // namespace mlp_layout

// Fully connected regression network 1 -> 32 -> 8 -> 4 -> 1 with ReLU on the
// hidden layers and an identity output. Parameters live in one flat array;
// layer l stores its weights row-major (out x in) followed by its biases.
struct MlpModel {
  static constexpr std::array<std::size_t, 5> kWidths = mlp_layout::kWidths;
  static constexpr std::size_t kLayers = kWidths.size() - 1;
  static constexpr std::size_t kParameterCount = mlp_layout::layer_offset(kLayers);
  static_assert(kParameterCount == kModelTheta);

  static constexpr std::size_t layer_offset(std::size_t l) { return mlp_layout::layer_offset(l); }

  std::array<double, kParameterCount> params{};
  double norm_lo = 0.0;  // training-set key bounds
  double norm_hi = 1.0;

  // Network output for an already-normalized input, unclamped.
  double raw_output(double normalized) const noexcept;
  // normalize -> network -> clamp to [0, 1].
  double predict(Key key) const noexcept;

  bool operator==(const MlpModel&) const = default;
};

// Piecewise Huber loss: quadratic within delta of the label, linear beyond.
double huber_loss(double pred, double label, double delta);
// d loss / d pred; magnitude never exceeds delta.
double huber_grad(double pred, double label, double delta);

// Mean Huber loss of the network over (inputs, labels), inputs already
// normalized. Accumulates d(mean loss)/d(params) into grad (same layout as
// MlpModel::params); grad is overwritten.
double batch_objective(const MlpModel& model, std::span<const double> inputs,
                       std::span<const double> labels, double delta,
                       std::span<double, MlpModel::kParameterCount> grad);

struct TrainConfig {
  double delta = 1.0;
  std::size_t epochs = 500;
  std::size_t batch_size = 256;
  double rho = 0.95;      // Adadelta decay
  double eps_opt = 1e-6;  // Adadelta stabilizer
  std::uint64_t rng_seed = 42;

  void validate() const;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> epoch_loss;     // mean Huber loss seen during each epoch
  std::vector<double> epoch_seconds;  // cumulative wall clock at end of each epoch
  int restarts = 0;                   // re-initializations after the network went flat
};

// Training labels: rank of the first occurrence in sorted order / (N - 1).
std::vector<double> rank_labels(std::span<const Key> sorted_keys);

// Throws ConfigError on a bad config, DataError when fewer than two distinct
// keys are given. Deterministic for identical (keys, cfg).
TrainResult train(std::span<const Key> keys, const TrainConfig& cfg);

// Binary format: "NNS1", u32 layer count + 1, u32 widths, then per layer
// row-major weights and biases as little-endian f64, then norm_lo, norm_hi.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

// A position model mapping a key to its approximate normalized rank.
class Predictor {
 public:
  struct OracleRank {
    std::shared_ptr<const std::vector<Key>> sorted_keys;
  };
  struct Constant {
    double value = 0.5;
  };
  // Hash of the key bits; a fixed but order-free mapping used as an
  // adversarial model.
  struct SeededRandom {
    std::uint64_t seed = 0;
  };

  static Predictor mlp(MlpModel model);
  static Predictor oracle(std::span<const Key> keys);
  static Predictor constant(double value);
  static Predictor seeded_random(std::uint64_t seed);

  // Output in [0, 1]; does not touch any counter.
  double operator()(Key key) const;

  const char* kind() const noexcept;
  const MlpModel* model() const noexcept;

 private:
  using Impl = std::variant<std::shared_ptr<const MlpModel>, OracleRank, Constant, SeededRandom>;
  explicit Predictor(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

// Evaluates the predictor and charges one model invocation.
inline double forward(const Predictor& p, Key key, OpCounters& counters) {
  ++counters.model_invocations;
  return p(key);
}

}  // namespace nnsort
