#include "qtk/budget.hpp"

#include <cmath>
#include <Eigen/QR>

#include "qtk/errors.hpp"

namespace qtk {

namespace {

cplx gaussian(Rng& rng) {
  // Box-Muller on the portable uniform draw
  const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
  return std::polar(std::sqrt(-2.0 * std::log(u1)), 2.0 * M_PI * u2);
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = gaussian(rng);
  return m;
}

}  // namespace

FidelityBudget fidelity_budget(double p_useful, double epsilon, int depth) {
  if (!(p_useful > 0 && p_useful <= 1)) throw ArithmeticError("useful probability must lie in (0, 1]");
  if (!(epsilon >= 0)) throw ArithmeticError("precision must be nonnegative");
  if (depth < 1) throw ArithmeticError("depth must be at least 1");
  const double root = std::sqrt(p_useful);
  return {p_useful - 2.0 * root * epsilon, root / 4.0, epsilon / depth};
}

Matrix random_unitary(int dim, Rng& rng) {
  const Matrix z = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  // fix the phases of R's diagonal so the distribution is Haar
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

ProductTrial perturbed_product_trial(int depth, int arity, double delta, Rng& rng) {
  if (depth < 1 || arity < 1 || !(delta > 0 && delta < 2)) throw ArithmeticError("bad perturbation trial");
  const int dim = pow3(arity);
  Matrix u = Matrix::Identity(dim, dim), v = Matrix::Identity(dim, dim);
  ProductTrial t;
  for (int i = 0; i < depth; ++i) {
    const Matrix g = random_unitary(dim, rng);
    // W = exp(i theta H) for Hermitian H with spectrum in [-1, 1] has ||W - I|| <= 2 sin(theta / 2)
    Matrix h = gaussian_matrix(dim, dim, rng);
    h = (h + h.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    const double target = delta * (0.5 + 0.5 * rng.uniform());
    const double theta = 2.0 * std::asin(target / 2.0);
    Eigen::VectorXcd phases(dim);
    for (int k = 0; k < dim; ++k) phases(k) = std::polar(1.0, theta * es.eigenvalues()(k) / scale);
    const Matrix w = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix gp = g * w;
    t.factor_sum += spectral_norm(g - gp);
    u = g * u;
    v = gp * v;
  }
  t.distance = spectral_norm(u - v);
  t.bound = depth * delta;
  return t;
}

ProjectionTrial useful_probability_trial(int dim, int subspace_dim, double epsilon, Rng& rng) {
  if (subspace_dim < 1 || subspace_dim > dim || !(epsilon >= 0 && epsilon <= 2))
    throw ArithmeticError("bad projection trial");
  Eigen::VectorXcd u = gaussian_matrix(dim, 1, rng);
  u.normalize();
  // v = cos(phi) u + sin(phi) w with w orthogonal to u; ||u - v|| = 2 sin(phi / 2)
  Eigen::VectorXcd w = gaussian_matrix(dim, 1, rng);
  w -= u * (u.adjoint() * w)(0);
  w.normalize();
  const double dist = epsilon * rng.uniform();
  const double phi = 2.0 * std::asin(dist / 2.0);
  const Eigen::VectorXcd v = std::cos(phi) * u + std::sin(phi) * w;
  const Matrix basis = random_unitary(dim, rng).leftCols(subspace_dim);
  ProjectionTrial t;
  t.p = (basis.adjoint() * u).squaredNorm();
  t.projected = (basis.adjoint() * v).squaredNorm();
  t.bound = t.p - 2.0 * std::sqrt(t.p) * epsilon;
  return t;
}

}  // namespace qtk
