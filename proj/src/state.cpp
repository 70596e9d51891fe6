#include "qtk/state.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qtk/errors.hpp"

namespace qtk {

int max_dense_width() {
  if (const char* env = std::getenv("QTK_MAX_WIDTH")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 14;
}

namespace {

std::vector<std::uint64_t> make_strides(int width) {
  std::vector<std::uint64_t> s(width + 1);
  s[0] = 1;
  for (int i = 1; i <= width; ++i) s[i] = s[i - 1] * 3;
  return s;
}

void check_gate_wires(const std::vector<int>& wires, int arity, int width) {
  if (static_cast<int>(wires.size()) != arity) throw WireError("wire count does not match gate arity");
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 0 || wires[i] >= width) throw WireError("wire outside register");
    for (std::size_t j = 0; j < i; ++j)
      if (wires[i] == wires[j]) throw WireError("wire clash");
  }
}

// Draw a value 0..2 given the three branch weights.
int sample(const double p[3], Rng& rng) {
  const double total = p[0] + p[1] + p[2];
  const double u = rng.uniform() * total;
  if (u < p[0]) return 0;
  if (u < p[0] + p[1] || p[2] == 0.0) return p[1] > 0.0 ? 1 : 0;
  return 2;
}

// Unitary whose first column is `v`.
Matrix completion(const std::vector<cplx>& v) {
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i) m(i, 0) = v[i];
  Matrix basis = Matrix::Identity(3, 3);
  int col = 1;
  for (int b = 0; b < 3 && col < 3; ++b) {
    Eigen::VectorXcd u = basis.col(b);
    for (int j = 0; j < col; ++j) u -= m.col(j).dot(u) * m.col(j);
    if (u.norm() < 1e-8) continue;
    m.col(col++) = u / u.norm();
  }
  return m;
}

}  // namespace

StateVector::StateVector(int width) : width_(width), strides_(make_strides(width)) {
  if (width < 1) throw SizeError("state width must be positive");
  if (width > max_dense_width())
    throw SizeError("dense state width " + std::to_string(width) + " exceeds cap " + std::to_string(max_dense_width()));
  amps_.assign(strides_[width], cplx{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int width, std::uint64_t index) {
  StateVector s(width);
  if (index >= s.amps_.size()) throw SizeError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int width, std::vector<cplx> amps) {
  StateVector s(width);
  if (amps.size() != s.amps_.size()) throw SizeError("amplitude count mismatch");
  s.amps_ = std::move(amps);
  return s;
}

StateVector StateVector::random(int width, Rng& rng) {
  StateVector s(width);
  double n = 0.0;
  for (auto& a : s.amps_) {
    // Box-Muller from the portable uniform draw
    const double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = {r * std::cos(2 * kPi * u2), r * std::sin(2 * kPi * u2)};
    n += std::norm(a);
  }
  for (auto& a : s.amps_) a /= std::sqrt(n);
  return s;
}

double StateVector::norm() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return std::sqrt(n);
}

void StateVector::apply(const GateDef& g, const std::vector<int>& wires) { apply(g.matrix, wires); }

void StateVector::apply(const GateMatrix& g, const std::vector<int>& wires) {
  const int k = g.arity();
  check_gate_wires(wires, k, width_);
  const int d = g.dim();
  std::vector<std::uint64_t> offset(d, 0);
  for (int l = 0; l < d; ++l) {
    int rest = l;
    for (int i = 0; i < k; ++i) {
      offset[l] += static_cast<std::uint64_t>(rest % 3) * strides_[wires[i]];
      rest /= 3;
    }
  }
  std::vector<bool> on_gate(width_, false);
  for (int w : wires) on_gate[w] = true;
  std::vector<int> free;
  for (int w = 0; w < width_; ++w)
    if (!on_gate[w]) free.push_back(w);
  const std::uint64_t outer = strides_[width_] / static_cast<std::uint64_t>(d);
  const Matrix& m = g.matrix();
  std::vector<cplx> in(d), out(d);
  std::vector<int> counter(free.size(), 0);
  std::uint64_t base = 0;
  for (std::uint64_t o = 0; o < outer; ++o) {
    for (int l = 0; l < d; ++l) in[l] = amps_[base + offset[l]];
    for (int r = 0; r < d; ++r) {
      cplx acc{};
      for (int c = 0; c < d; ++c) acc += m(r, c) * in[c];
      out[r] = acc;
    }
    for (int l = 0; l < d; ++l) amps_[base + offset[l]] = out[l];
    for (std::size_t i = 0; i < free.size(); ++i) {
      base += strides_[free[i]];
      if (++counter[i] < 3) break;
      counter[i] = 0;
      base -= 3 * strides_[free[i]];
    }
  }
}

double StateVector::probability(int wire, int value) const {
  double p = 0.0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if (static_cast<int>((i / strides_[wire]) % 3) == value) p += std::norm(amps_[i]);
  return p;
}

void StateVector::collapse(int wire, int value) {
  const double p = probability(wire, value);
  if (p < 1e-24) throw SimulationError("collapse onto a zero-norm branch");
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    amps_[i] = static_cast<int>((i / strides_[wire]) % 3) == value ? amps_[i] * scale : cplx{};
}

int StateVector::measure(int wire, Rng& rng) {
  check_gate_wires({wire}, 1, width_);
  const double p[3] = {probability(wire, 0), probability(wire, 1), probability(wire, 2)};
  const int v = sample(p, rng);
  collapse(wire, v);
  return v;
}

void StateVector::prepare(int wire, const std::vector<cplx>& single) {
  if (leakage(wire) > 1e-10) throw SimulationError("resource wire not in |0>");
  apply(GateMatrix(1, completion(single)), {wire});
}

double StateVector::leakage(int wire) const { return 1.0 - probability(wire, 0); }

StateVector StateVector::extended(int extra) const {
  StateVector s(width_ + extra);
  std::copy(amps_.begin(), amps_.end(), s.amps_.begin());
  return s;
}

StateVector StateVector::truncated(int extra) const {
  StateVector s(width_ - extra);
  double lost = 0.0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (i < s.amps_.size())
      s.amps_[i] = amps_[i];
    else
      lost += std::norm(amps_[i]);
  }
  if (lost > 1e-10) throw SimulationError("dropped wires are not in |0>");
  return s;
}

StateVector apply_gate(StateVector s, const GateMatrix& g, const std::vector<int>& wires) {
  s.apply(g, wires);
  return s;
}

std::pair<int, StateVector> measure(StateVector s, int wire, Rng& rng) {
  const int v = s.measure(wire, rng);
  return {v, std::move(s)};
}

double distance_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.width() != b.width()) return INFINITY;
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.amplitudes().size(); ++i)
    if (std::abs(b.amplitudes()[i]) > best) {
      best = std::abs(b.amplitudes()[i]);
      arg = i;
    }
  cplx ph = a.amplitudes()[arg] / b.amplitudes()[arg];
  ph = std::abs(ph) > 0 ? ph / std::abs(ph) : cplx{1.0};
  double d = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
    d += std::norm(a.amplitudes()[i] - ph * b.amplitudes()[i]);
  return std::sqrt(d);
}

// ---- sparse ----

namespace {
constexpr double kPrune = 1e-13;
}

SparseState::SparseState(int width) : width_(width), strides_(make_strides(width)) {
  if (width < 1 || width > 40) throw SizeError("sparse state width must be 1..40");
  amps_[0] = 1.0;
}

SparseState SparseState::basis(int width, std::uint64_t index) {
  SparseState s(width);
  if (index >= s.strides_[width]) throw SizeError("basis index out of range");
  s.amps_.clear();
  s.amps_[index] = 1.0;
  return s;
}

SparseState SparseState::from_entries(int width, std::unordered_map<std::uint64_t, cplx> entries) {
  SparseState s(width);
  for (const auto& [idx, a] : entries)
    if (idx >= s.strides_[width]) throw SizeError("basis index out of range");
  s.amps_ = std::move(entries);
  return s;
}

SparseState SparseState::basis_digits(const std::vector<int>& digits) {
  SparseState s(static_cast<int>(digits.size()));
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) idx += static_cast<std::uint64_t>(digits[i]) * s.strides_[i];
  s.amps_.clear();
  s.amps_[idx] = 1.0;
  return s;
}

cplx SparseState::amplitude(std::uint64_t i) const {
  auto it = amps_.find(i);
  return it == amps_.end() ? cplx{} : it->second;
}

double SparseState::norm() const {
  double n = 0.0;
  for (const auto& [i, a] : amps_) n += std::norm(a);
  return std::sqrt(n);
}

void SparseState::apply(const GateDef& g, const std::vector<int>& wires) {
  const int k = g.arity();
  check_gate_wires(wires, k, width_);
  std::unordered_map<std::uint64_t, cplx> out;
  out.reserve(amps_.size() * 2);
  const int d = g.matrix.dim();
  std::vector<std::uint64_t> offset(d, 0);
  for (int l = 0; l < d; ++l) {
    int rest = l;
    for (int i = 0; i < k; ++i) {
      offset[l] += static_cast<std::uint64_t>(rest % 3) * strides_[wires[i]];
      rest /= 3;
    }
  }
  for (const auto& [idx, a] : amps_) {
    int local = 0;
    for (int i = k - 1; i >= 0; --i) local = local * 3 + digit(idx, wires[i]);
    const std::uint64_t base = idx - offset[local];
    for (const auto& [r, v] : g.columns[local]) out[base + offset[r]] += v * a;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) < kPrune)
      it = out.erase(it);
    else
      ++it;
  }
  amps_ = std::move(out);
}

double SparseState::probability(int wire, int value) const {
  double p = 0.0;
  for (const auto& [i, a] : amps_)
    if (digit(i, wire) == value) p += std::norm(a);
  return p;
}

void SparseState::collapse(int wire, int value) {
  const double p = probability(wire, value);
  if (p < 1e-24) throw SimulationError("collapse onto a zero-norm branch");
  const double scale = 1.0 / std::sqrt(p);
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (digit(it->first, wire) != value) {
      it = amps_.erase(it);
    } else {
      it->second *= scale;
      ++it;
    }
  }
}

int SparseState::measure(int wire, Rng& rng) {
  check_gate_wires({wire}, 1, width_);
  double p[3] = {0, 0, 0};
  for (const auto& [i, a] : amps_) p[digit(i, wire)] += std::norm(a);
  const int v = sample(p, rng);
  collapse(wire, v);
  return v;
}

void SparseState::prepare(int wire, const std::vector<cplx>& single) {
  if (leakage(wire) > 1e-10) throw SimulationError("resource wire not in |0>");
  auto def = GateDef{"prep", GateMatrix(1, completion(single))};
  def.columns.resize(3);
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r)
      if (std::abs(def.matrix(r, c)) > 1e-15) def.columns[c].emplace_back(r, def.matrix(r, c));
  apply(def, {wire});
}

double SparseState::leakage(int wire) const { return 1.0 - probability(wire, 0); }

SparseState SparseState::extended(int extra) const {
  SparseState s(width_ + extra);
  s.amps_ = amps_;
  return s;
}

SparseState SparseState::truncated(int extra) const {
  SparseState s(width_ - extra);
  s.amps_.clear();
  const std::uint64_t limit = strides_[width_ - extra];
  double lost = 0.0;
  for (const auto& [i, a] : amps_) {
    if (i < limit)
      s.amps_[i] = a;
    else
      lost += std::norm(a);
  }
  if (lost > 1e-10) throw SimulationError("dropped wires are not in |0>");
  return s;
}

}  // namespace qtk
