#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "nnsort/model.hpp"
#include "nnsort/rng.hpp"

namespace nnsort {

namespace {

class Adadelta {
 public:
  Adadelta(double rho, double eps) : rho_(rho), eps_(eps) {}

  void step(std::span<double> params, std::span<const double> grad) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double g = grad[i];
      sq_grad_[i] = rho_ * sq_grad_[i] + (1.0 - rho_) * g * g;
      const double update = -std::sqrt(sq_update_[i] + eps_) / std::sqrt(sq_grad_[i] + eps_) * g;
      sq_update_[i] = rho_ * sq_update_[i] + (1.0 - rho_) * update * update;
      params[i] += update;
    }
  }

 private:
  double rho_;
  double eps_;
  std::array<double, MlpModel::kParameterCount> sq_grad_{};
  std::array<double, MlpModel::kParameterCount> sq_update_{};
};

// Small positive hidden biases keep ReLU units alive at the start; the output
// bias starts at the mean label so early steps do not drive the hidden layers
// to zero chasing the offset.
constexpr double kHiddenBiasInit = 0.1;
constexpr double kOutputBiasInit = 0.5;

void init_weights(MlpModel& model, SplitMix64& rng) {
  for (std::size_t l = 0; l < MlpModel::kLayers; ++l) {
    const std::size_t n_in = MlpModel::kWidths[l];
    const std::size_t n_out = MlpModel::kWidths[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(n_in + n_out));
    double* w = model.params.data() + MlpModel::layer_offset(l);
    for (std::size_t i = 0; i < n_in * n_out; ++i) w[i] = (2.0 * rng.next_double() - 1.0) * limit;
    std::fill(w + n_in * n_out, w + n_in * n_out + n_out,
              l + 1 == MlpModel::kLayers ? kOutputBiasInit : kHiddenBiasInit);
  }
}

// A ReLU network whose output no longer depends on its input cannot recover:
// every hidden gradient is zero and only the output bias keeps moving.
bool output_is_flat(const MlpModel& model) {
  constexpr int kProbes = 64;
  const double first = model.raw_output(0.0);
  for (int i = 1; i <= kProbes; ++i) {
    if (std::abs(model.raw_output(static_cast<double>(i) / kProbes) - first) > 1e-12) return false;
  }
  return true;
}

constexpr int kMaxRestarts = 8;

}  // namespace

void TrainConfig::validate() const {
  if (!(delta > 0.0)) throw ConfigError("huber delta must be positive");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("adadelta rho must lie in (0, 1)");
  if (!(eps_opt > 0.0)) throw ConfigError("adadelta epsilon must be positive");
}

std::vector<double> rank_labels(std::span<const Key> sorted_keys) {
  std::vector<double> labels(sorted_keys.size(), 0.0);
  if (sorted_keys.size() < 2) return labels;
  const double denom = static_cast<double>(sorted_keys.size() - 1);
  std::size_t first = 0;
  for (std::size_t i = 0; i < sorted_keys.size(); ++i) {
    if (sorted_keys[i] != sorted_keys[first]) first = i;
    labels[i] = static_cast<double>(first) / denom;
  }
  return labels;
}

TrainResult train(std::span<const Key> keys, const TrainConfig& cfg) {
  cfg.validate();
  check_keys(keys);
  if (keys.empty()) throw DataError("training set is empty");
  if (cfg.batch_size > keys.size()) {
    throw ConfigError("batch size " + std::to_string(cfg.batch_size) + " exceeds training set size " +
                      std::to_string(keys.size()));
  }

  std::vector<Key> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() < sorted.back())) {
    throw DataError("training requires at least two distinct keys");
  }

  TrainResult result;
  MlpModel& model = result.model;
  model.norm_lo = sorted.front();
  model.norm_hi = sorted.back();

  const std::size_t n = sorted.size();
  std::vector<double> inputs(n);
  for (std::size_t i = 0; i < n; ++i) inputs[i] = normalize(sorted[i], model.norm_lo, model.norm_hi);
  const std::vector<double> labels = rank_labels(sorted);

  SplitMix64 rng(cfg.rng_seed);
  init_weights(model, rng);
  Adadelta optimizer(cfg.rho, cfg.eps_opt);
  int restarts = 0;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> batch_x(cfg.batch_size), batch_y(cfg.batch_size);
  std::array<double, MlpModel::kParameterCount> grad{};

  const auto start = std::chrono::steady_clock::now();
  while (result.epoch_loss.size() < cfg.epochs) {
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.next_below(i + 1)]);

    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < n; begin += cfg.batch_size) {
      const std::size_t len = std::min(cfg.batch_size, n - begin);
      for (std::size_t k = 0; k < len; ++k) {
        batch_x[k] = inputs[order[begin + k]];
        batch_y[k] = labels[order[begin + k]];
      }
      const double loss = batch_objective(model, std::span(batch_x).first(len), std::span(batch_y).first(len),
                                          cfg.delta, grad);
      loss_sum += loss * static_cast<double>(len);
      optimizer.step(model.params, grad);
    }

    // Dead network: draw fresh weights from the same stream and start over.
    if (restarts < kMaxRestarts && output_is_flat(model)) {
      ++restarts;
      init_weights(model, rng);
      optimizer = Adadelta(cfg.rho, cfg.eps_opt);
      result.epoch_loss.clear();
      result.epoch_seconds.clear();
      continue;
    }

    result.epoch_loss.push_back(loss_sum / static_cast<double>(n));
    result.epoch_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  result.restarts = restarts;
  return result;
}

}  // namespace nnsort
