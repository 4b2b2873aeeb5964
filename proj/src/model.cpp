#include "nnsort/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace nnsort {

namespace {

using W = std::array<std::size_t, 5>;
constexpr W kW = MlpModel::kWidths;

struct Activations {
  std::array<double, kW[0]> a0{};
  std::array<double, kW[1]> z1{}, a1{};
  std::array<double, kW[2]> z2{}, a2{};
  std::array<double, kW[3]> z3{}, a3{};
  double out = 0.0;
};

template <std::size_t L>
void dense(const double* params, const double* in, double* z) {
  constexpr std::size_t n_in = kW[L];
  constexpr std::size_t n_out = kW[L + 1];
  const double* w = params + MlpModel::layer_offset(L);
  const double* b = w + n_in * n_out;
  for (std::size_t o = 0; o < n_out; ++o) {
    double s = b[o];
    for (std::size_t i = 0; i < n_in; ++i) s += w[o * n_in + i] * in[i];
    z[o] = s;
  }
}

template <std::size_t N>
void relu(const std::array<double, N>& z, std::array<double, N>& a) {
  for (std::size_t i = 0; i < N; ++i) a[i] = z[i] > 0.0 ? z[i] : 0.0;
}

void run_forward(const double* p, double x, Activations& act) {
  act.a0[0] = x;
  dense<0>(p, act.a0.data(), act.z1.data());
  relu(act.z1, act.a1);
  dense<1>(p, act.a1.data(), act.z2.data());
  relu(act.z2, act.a2);
  dense<2>(p, act.a2.data(), act.z3.data());
  relu(act.z3, act.a3);
  dense<3>(p, act.a3.data(), &act.out);
}

// Accumulates dL/dparams for one layer given dL/dz of its outputs, and
// returns dL/d(input activation) masked by the previous layer's ReLU.
template <std::size_t L>
void backward_layer(const double* p, double* g, const double* in, const double* dz,
                    double* din, const double* z_in) {
  constexpr std::size_t n_in = kW[L];
  constexpr std::size_t n_out = kW[L + 1];
  const double* w = p + MlpModel::layer_offset(L);
  double* gw = g + MlpModel::layer_offset(L);
  double* gb = gw + n_in * n_out;
  for (std::size_t o = 0; o < n_out; ++o) {
    for (std::size_t i = 0; i < n_in; ++i) gw[o * n_in + i] += dz[o] * in[i];
    gb[o] += dz[o];
  }
  if (din == nullptr) return;
  for (std::size_t i = 0; i < n_in; ++i) {
    double s = 0.0;
    for (std::size_t o = 0; o < n_out; ++o) s += w[o * n_in + i] * dz[o];
    din[i] = z_in[i] > 0.0 ? s : 0.0;
  }
}

constexpr char kMagic[4] = {'N', 'N', 'S', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

class Reader {
 public:
  Reader(std::vector<unsigned char> bytes, std::string name) : bytes_(std::move(bytes)), name_(std::move(name)) {}

  const unsigned char* take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw DataError("model file " + name_ + " is truncated");
    const unsigned char* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() {
    const auto* b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  double f64() {
    const auto* b = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  std::vector<unsigned char> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

double MlpModel::raw_output(double normalized) const noexcept {
  Activations act;
  run_forward(params.data(), normalized, act);
  return act.out;
}

double MlpModel::predict(Key key) const noexcept {
  double x = 0.0;
  if (norm_lo < norm_hi) x = normalize(key, norm_lo, norm_hi);
  const double y = raw_output(x);
  if (!(y > 0.0)) return 0.0;  // also maps NaN to 0
  return y < 1.0 ? y : 1.0;
}

double huber_loss(double pred, double label, double delta) {
  if (!(delta > 0.0)) throw ConfigError("huber delta must be positive");
  const double e = std::abs(pred - label);
  return e <= delta ? 0.5 * e * e : delta * e - 0.5 * delta * delta;
}

double huber_grad(double pred, double label, double delta) {
  if (!(delta > 0.0)) throw ConfigError("huber delta must be positive");
  const double e = pred - label;
  if (std::abs(e) <= delta) return e;
  return e > 0.0 ? delta : -delta;
}

double batch_objective(const MlpModel& model, std::span<const double> inputs,
                       std::span<const double> labels, double delta,
                       std::span<double, MlpModel::kParameterCount> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  if (inputs.empty()) return 0.0;
  const double scale = 1.0 / static_cast<double>(inputs.size());
  const double* p = model.params.data();
  double* g = grad.data();

  Activations act;
  std::array<double, kW[3]> d3{};
  std::array<double, kW[2]> d2{};
  std::array<double, kW[1]> d1{};
  double loss = 0.0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    run_forward(p, inputs[s], act);
    loss += huber_loss(act.out, labels[s], delta);
    const double d_out = huber_grad(act.out, labels[s], delta) * scale;
    backward_layer<3>(p, g, act.a3.data(), &d_out, d3.data(), act.z3.data());
    backward_layer<2>(p, g, act.a2.data(), d3.data(), d2.data(), act.z2.data());
    backward_layer<1>(p, g, act.a1.data(), d2.data(), d1.data(), act.z1.data());
    backward_layer<0>(p, g, act.a0.data(), d1.data(), nullptr, nullptr);
  }
  return loss * scale;
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model file " + path.string());
  out.write(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(MlpModel::kWidths.size()));
  for (auto w : MlpModel::kWidths) put_u32(out, static_cast<std::uint32_t>(w));
  for (double v : model.params) put_f64(out, v);
  put_f64(out, model.norm_lo);
  put_f64(out, model.norm_hi);
  if (!out) throw DataError("write error on model file " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(std::move(bytes), path.string());

  const auto* magic = r.take(4);
  if (std::memcmp(magic, kMagic, 3) != 0) throw DataError("model file " + path.string() + " has a bad magic header");
  if (magic[3] != static_cast<unsigned char>(kMagic[3])) {
    throw DataError("model file " + path.string() + " has unsupported format version '" +
                    std::string(1, static_cast<char>(magic[3])) + "'");
  }
  const auto n_dims = r.u32();
  if (n_dims != MlpModel::kWidths.size()) throw DataError("model file " + path.string() + " has wrong layer count");
  for (auto expected : MlpModel::kWidths) {
    if (r.u32() != expected) throw DataError("model file " + path.string() + " has unexpected layer widths");
  }
  MlpModel model;
  for (auto& v : model.params) v = r.f64();
  model.norm_lo = r.f64();
  model.norm_hi = r.f64();
  if (!r.at_end()) throw DataError("model file " + path.string() + " has trailing bytes");
  for (double v : model.params) {
    if (!std::isfinite(v)) throw DataError("model file " + path.string() + " holds non-finite parameters");
  }
  if (!std::isfinite(model.norm_lo) || !std::isfinite(model.norm_hi) || !(model.norm_lo < model.norm_hi)) {
    throw DataError("model file " + path.string() + " has invalid normalization bounds");
  }
  return model;
}

}  // namespace nnsort
