#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtk/phase.hpp"

namespace qtk {

using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxGateArity = 4;

int pow3(int e);
std::uint64_t pow3u(int e);

// Unitary on `arity` qutrits, little-endian: local wire 0 is the least significant trit.
class GateMatrix {
 public:
  GateMatrix(int arity, Matrix m);

  int arity() const { return arity_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  GateMatrix adjoint() const;
  GateMatrix pow(int e) const;
  bool is_unitary(double tol = 1e-12) const;

  // this applied after rhs
  GateMatrix operator*(const GateMatrix& rhs) const;

 private:
  int arity_;
  Matrix m_;
};

struct Binary {
  int level;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Ternary {
  friend bool operator==(const Ternary&, const Ternary&) = default;
};
using ControlMode = std::variant<Binary, Ternary>;

// Catalog: INC, Z, H, Q, TSWAP, SUM, P9, R2, I, and X^aZ^b written PAULI[a,b].
GateMatrix primitive_matrix(std::string_view name);

GateMatrix pauli(int x_power, int z_power);
GateMatrix phase_gate(std::int64_t num, std::int64_t den);         // diag(1, e^{2pi i p/q}, e^{4pi i p/q})
GateMatrix binary_phase_gate(std::int64_t num, std::int64_t den);  // diag(1, e^{2pi i p/q}, 1)
GateMatrix binary_hadamard();                                      // Hadamard on {0,1}, fixes |2>
GateMatrix identity_gate(int arity);

// First local wire is the control, the remaining wires carry u.
GateMatrix controlled(const GateMatrix& u, ControlMode mode);

GateMatrix two_level_reflection(std::uint64_t j, std::uint64_t k, int arity);

// Generalized Pauli conjugation test; valid for any arity up to kMaxGateArity.
bool is_clifford(const GateMatrix& u, double tol = 1e-10);

// Place `g` on the listed wires of a `width`-qutrit register.
Matrix embed(const GateMatrix& g, const std::vector<int>& wires, int width);

GateMatrix kron(const GateMatrix& low, const GateMatrix& high);  // low acts on wire 0

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol = 1e-12);
double distance_up_to_phase(const Matrix& a, const Matrix& b);
double spectral_norm(const Matrix& m);

}  // namespace qtk
