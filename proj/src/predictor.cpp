#include <algorithm>
#include <bit>

#include "nnsort/model.hpp"
#include "nnsort/rng.hpp"

namespace nnsort {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Predictor Predictor::mlp(MlpModel model) {
  return Predictor(std::make_shared<const MlpModel>(std::move(model)));
}

Predictor Predictor::oracle(std::span<const Key> keys) {
  auto sorted = std::make_shared<std::vector<Key>>(keys.begin(), keys.end());
  std::sort(sorted->begin(), sorted->end());
  return Predictor(OracleRank{std::move(sorted)});
}

Predictor Predictor::constant(double value) {
  return Predictor(Constant{std::clamp(value, 0.0, 1.0)});
}

Predictor Predictor::seeded_random(std::uint64_t seed) { return Predictor(SeededRandom{seed}); }

double Predictor::operator()(Key key) const {
  return std::visit(
      overloaded{
          [key](const std::shared_ptr<const MlpModel>& m) { return m->predict(key); },
          [key](const OracleRank& o) {
            const auto& keys = *o.sorted_keys;
            if (keys.size() < 2) return 0.0;
            const auto rank = std::lower_bound(keys.begin(), keys.end(), key) - keys.begin();
            const double r = static_cast<double>(rank) / static_cast<double>(keys.size() - 1);
            return std::min(r, 1.0);
          },
          [](const Constant& c) { return c.value; },
          [key](const SeededRandom& r) {
            const double k = key == 0.0 ? 0.0 : key;  // -0.0 and 0.0 are the same key
            return static_cast<double>(mix64(std::bit_cast<std::uint64_t>(k) ^ r.seed) >> 11) * 0x1.0p-53;
          },
      },
      impl_);
}

const char* Predictor::kind() const noexcept {
  switch (impl_.index()) {
    case 0: return "mlp";
    case 1: return "oracle";
    case 2: return "constant";
    default: return "random";
  }
}

const MlpModel* Predictor::model() const noexcept {
  if (const auto* m = std::get_if<std::shared_ptr<const MlpModel>>(&impl_)) return m->get();
  return nullptr;
}

}  // namespace nnsort
