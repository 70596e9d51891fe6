#include "qtk/gate_matrix.hpp"

#include <cmath>
#include <complex>

#include "qtk/errors.hpp"

namespace qtk {

int pow3(int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

std::uint64_t pow3u(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

GateMatrix::GateMatrix(int arity, Matrix m) : arity_(arity), m_(std::move(m)) {
  if (arity < 1 || arity > kMaxGateArity) throw SizeError("gate arity " + std::to_string(arity));
  if (m_.rows() != pow3(arity) || m_.cols() != pow3(arity))
    throw SizeError("matrix size does not match arity");
}

GateMatrix GateMatrix::adjoint() const { return {arity_, m_.adjoint()}; }

GateMatrix GateMatrix::pow(int e) const {
  if (e < 0) return adjoint().pow(-e);
  Matrix r = Matrix::Identity(dim(), dim());
  for (int i = 0; i < e; ++i) r = m_ * r;
  return {arity_, r};
}

bool GateMatrix::is_unitary(double tol) const {
  const Matrix d = m_.adjoint() * m_ - Matrix::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff() < tol;
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
  if (arity_ != rhs.arity_) throw SizeError("arity mismatch in product");
  return {arity_, m_ * rhs.m_};
}

namespace {

Matrix diag3(cplx a, cplx b, cplx c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Matrix inc_matrix() {
  Matrix m = Matrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) m((j + 1) % 3, j) = 1.0;
  return m;
}

Matrix hadamard_matrix() {
  Matrix m(3, 3);
  const double s = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) m(j, k) = s * root_of_unity(j * k, 3);
  return m;
}

}  // namespace

GateMatrix identity_gate(int arity) {
  const int d = pow3(arity);
  return {arity, Matrix::Identity(d, d)};
}

GateMatrix pauli(int x_power, int z_power) {
  Matrix x = Matrix::Identity(3, 3);
  const Matrix inc = inc_matrix();
  for (int i = 0; i < ((x_power % 3) + 3) % 3; ++i) x = inc * x;
  const Matrix z = diag3(1.0, root_of_unity(z_power, 3), root_of_unity(2 * z_power, 3));
  return {1, x * z};
}

GateMatrix phase_gate(std::int64_t num, std::int64_t den) {
  return {1, diag3(1.0, root_of_unity(num, den), root_of_unity(2 * num, den))};
}

GateMatrix binary_phase_gate(std::int64_t num, std::int64_t den) {
  return {1, diag3(1.0, root_of_unity(num, den), 1.0)};
}

GateMatrix binary_hadamard() {
  Matrix m = Matrix::Zero(3, 3);
  const double s = 1.0 / std::sqrt(2.0);
  m(0, 0) = s;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -s;
  m(2, 2) = 1.0;
  return {1, m};
}

GateMatrix primitive_matrix(std::string_view name) {
  if (name == "I") return identity_gate(1);
  if (name == "INC") return {1, inc_matrix()};
  if (name == "Z") return {1, diag3(1.0, root_of_unity(1, 3), root_of_unity(2, 3))};
  if (name == "H") return {1, hadamard_matrix()};
  if (name == "Q") return {1, diag3(1.0, 1.0, root_of_unity(1, 3))};
  if (name == "P9") return {1, diag3(root_of_unity(-1, 9), 1.0, root_of_unity(1, 9))};
  if (name == "R2") return {1, diag3(1.0, 1.0, -1.0)};
  if (name == "SUM") {
    Matrix m = Matrix::Zero(9, 9);
    for (int c = 0; c < 3; ++c)
      for (int t = 0; t < 3; ++t) m(c + 3 * ((t + c) % 3), c + 3 * t) = 1.0;
    return {2, m};
  }
  if (name == "TSWAP") {
    Matrix m = Matrix::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(b + 3 * a, a + 3 * b) = 1.0;
    return {2, m};
  }
  if (name.size() == 10 && name.substr(0, 6) == "PAULI[" && name[7] == ',' && name[9] == ']') {
    const int a = name[6] - '0';
    const int b = name[8] - '0';
    if (a >= 0 && a < 3 && b >= 0 && b < 3) return pauli(a, b);
  }
  throw CatalogError("unknown catalog gate '" + std::string(name) + "'");
}

GateMatrix controlled(const GateMatrix& u, ControlMode mode) {
  if (u.arity() + 1 > kMaxGateArity) throw SizeError("controlled gate exceeds maximum arity");
  const int du = u.dim();
  Matrix m = Matrix::Zero(3 * du, 3 * du);
  for (int c = 0; c < 3; ++c) {
    Matrix block = Matrix::Identity(du, du);
    if (const auto* b = std::get_if<Binary>(&mode)) {
      if (b->level < 0 || b->level > 2) throw SizeError("binary control level out of range");
      if (c == b->level) block = u.matrix();
    } else {
      block = u.pow(c).matrix();
    }
    // control is local wire 0: index = c + 3 * target_index
    for (int r = 0; r < du; ++r)
      for (int k = 0; k < du; ++k) m(c + 3 * r, c + 3 * k) = block(r, k);
  }
  return {u.arity() + 1, m};
}

GateMatrix two_level_reflection(std::uint64_t j, std::uint64_t k, int arity) {
  if (arity < 1 || arity > kMaxGateArity) throw SizeError("reflection arity");
  if (j == k) throw DegenerateReflectionError("two-level reflection needs distinct levels");
  const std::uint64_t d = pow3u(arity);
  if (j >= d || k >= d) throw SizeError("reflection level out of range");
  Matrix m = Matrix::Identity(static_cast<int>(d), static_cast<int>(d));
  m(j, j) = 0.0;
  m(k, k) = 0.0;
  m(j, k) = 1.0;
  m(k, j) = 1.0;
  return {arity, m};
}

GateMatrix kron(const GateMatrix& low, const GateMatrix& high) {
  const int dl = low.dim();
  const int dh = high.dim();
  Matrix m(dl * dh, dl * dh);
  for (int r1 = 0; r1 < dh; ++r1)
    for (int c1 = 0; c1 < dh; ++c1)
      for (int r0 = 0; r0 < dl; ++r0)
        for (int c0 = 0; c0 < dl; ++c0) m(r0 + dl * r1, c0 + dl * c1) = high(r1, c1) * low(r0, c0);
  return {low.arity() + high.arity(), m};
}

Matrix embed(const GateMatrix& g, const std::vector<int>& wires, int width) {
  if (static_cast<int>(wires.size()) != g.arity()) throw WireError("wire count does not match arity");
  const int d = pow3(width);
  Matrix m = Matrix::Zero(d, d);
  std::vector<int> stride(wires.size());
  for (std::size_t i = 0; i < wires.size(); ++i) stride[i] = pow3(wires[i]);
  for (int col = 0; col < d; ++col) {
    int local = 0;
    int base = col;
    for (std::size_t i = 0; i < wires.size(); ++i) {
      const int digit = (col / stride[i]) % 3;
      local += digit * pow3(static_cast<int>(i));
      base -= digit * stride[i];
    }
    for (int r = 0; r < g.dim(); ++r) {
      const cplx v = g(r, local);
      if (v == cplx{}) continue;
      int row = base;
      for (std::size_t i = 0; i < wires.size(); ++i) row += ((r / pow3(static_cast<int>(i))) % 3) * stride[i];
      m(row, col) = v;
    }
  }
  return m;
}

namespace {

// Column index -> digit vector helpers for the Pauli test.
int add_digits(int a, int b, int n) {
  int r = 0;
  for (int i = 0; i < n; ++i) {
    const int p = pow3(i);
    r += (((a / p) % 3 + (b / p) % 3) % 3) * p;
  }
  return r;
}

bool is_pauli_up_to_phase(const Matrix& m, int n, double tol) {
  const int d = pow3(n);
  int shift = -1;
  for (int r = 0; r < d; ++r)
    if (std::abs(m(r, 0)) > 0.5) {
      shift = r;
      break;
    }
  if (shift < 0) return false;
  const cplx v0 = m(shift, 0);
  if (std::abs(std::abs(v0) - 1.0) > tol) return false;
  std::vector<int> zexp(n, 0);
  for (int i = 0; i < n; ++i) {
    const int col = pow3(i);
    const int row = add_digits(col, shift, n);
    const cplx ratio = m(row, col) / v0;
    int found = -1;
    for (int e = 0; e < 3; ++e)
      if (std::abs(ratio - root_of_unity(e, 3)) < tol) found = e;
    if (found < 0) return false;
    zexp[i] = found;
  }
  for (int col = 0; col < d; ++col) {
    int phase = 0;
    for (int i = 0; i < n; ++i) phase += zexp[i] * ((col / pow3(i)) % 3);
    const cplx expect = v0 * root_of_unity(phase, 3);
    const int row = add_digits(col, shift, n);
    for (int r = 0; r < d; ++r) {
      const cplx want = r == row ? expect : cplx{};
      if (std::abs(m(r, col) - want) > tol) return false;
    }
  }
  return true;
}

}  // namespace

bool is_clifford(const GateMatrix& u, double tol) {
  const int n = u.arity();
  const Matrix& U = u.matrix();
  const GateMatrix x = primitive_matrix("INC");
  const GateMatrix z = primitive_matrix("Z");
  for (int w = 0; w < n; ++w) {
    for (const GateMatrix* p : {&x, &z}) {
      const Matrix gen = embed(*p, {w}, n);
      if (!is_pauli_up_to_phase(U * gen * U.adjoint(), n, tol)) return false;
    }
  }
  return true;
}

namespace {

cplx phase_alignment(const Matrix& a, const Matrix& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) == 0.0) return 1.0;
  const cplx ph = a(r, c) / b(r, c);
  const double mag = std::abs(ph);
  return mag == 0.0 ? cplx{1.0} : ph / mag;
}

}  // namespace

double distance_up_to_phase(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - phase_alignment(a, b) * b).cwiseAbs().maxCoeff();
}

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) { return distance_up_to_phase(a, b) < tol; }

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 64) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

}  // namespace qtk
