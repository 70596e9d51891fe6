#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "qtk/gate_registry.hpp"

namespace qtk {

// Portable draw: mt19937_64 output is fixed by the standard; the float mapping is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

int max_dense_width();  // QTK_MAX_WIDTH, default 14

class StateVector {
 public:
  explicit StateVector(int width);  // |0...0>
  static StateVector basis(int width, std::uint64_t index);
  static StateVector from_amplitudes(int width, std::vector<cplx> amps);
  static StateVector random(int width, Rng& rng);

  int width() const { return width_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::uint64_t i) const { return amps_[i]; }
  double norm() const;

  void apply(const GateDef& g, const std::vector<int>& wires);
  void apply(const GateMatrix& g, const std::vector<int>& wires);
  double probability(int wire, int value) const;
  int measure(int wire, Rng& rng);
  void collapse(int wire, int value);
  void prepare(int wire, const std::vector<cplx>& single);  // wire must be |0>

  StateVector extended(int extra) const;    // append |0> wires
  StateVector truncated(int extra) const;   // drop trailing wires that are |0>
  double leakage(int wire) const;           // weight on nonzero values

 private:
  int width_;
  std::vector<cplx> amps_;
  std::vector<std::uint64_t> strides_;
};

// Map-based state for wide registers with few nonzero amplitudes.
class SparseState {
 public:
  explicit SparseState(int width);
  static SparseState basis(int width, std::uint64_t index);
  static SparseState basis_digits(const std::vector<int>& digits);
  // Unnormalized entries; the caller keeps the state normalized.
  static SparseState from_entries(int width, std::unordered_map<std::uint64_t, cplx> entries);

  int width() const { return width_; }
  const std::unordered_map<std::uint64_t, cplx>& entries() const { return amps_; }
  cplx amplitude(std::uint64_t i) const;
  double norm() const;

  void apply(const GateDef& g, const std::vector<int>& wires);
  double probability(int wire, int value) const;
  int measure(int wire, Rng& rng);
  void collapse(int wire, int value);
  void prepare(int wire, const std::vector<cplx>& single);

  SparseState extended(int extra) const;
  SparseState truncated(int extra) const;
  double leakage(int wire) const;

  int digit(std::uint64_t index, int wire) const { return static_cast<int>((index / strides_[wire]) % 3); }

 private:
  int width_;
  std::unordered_map<std::uint64_t, cplx> amps_;
  std::vector<std::uint64_t> strides_;
};

StateVector apply_gate(StateVector s, const GateMatrix& g, const std::vector<int>& wires);
std::pair<int, StateVector> measure(StateVector s, int wire, Rng& rng);

double distance_up_to_phase(const StateVector& a, const StateVector& b);

}  // namespace qtk
