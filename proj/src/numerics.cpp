#include "tdesign/numerics.hpp"

#include <cmath>

namespace tdesign {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  return 0.5 * (a + a.adjoint().eval());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int t) {
  ComplexMatrix out = a;
  for (int i = 1; i < t; ++i) out = kron(out, a);
  return out;
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw NotHermitian("matrix is not square");
  if (!is_hermitian(h, tolerances().hermitian_check))
    throw NotHermitian("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h));
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  auto es = hermitian_eig(h);
  const auto& tol = tolerances();
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    double v = es.values(i);
    if (v < tol.too_negative)
      throw TooNegative("eigenvalue " + std::to_string(v) +
                        " below physicality threshold");
    roots(i) = v > 0 ? std::sqrt(v) : 0.0;
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

double min_eigenvalue(const ComplexMatrix& h) {
  return hermitian_eig(h).values(0);
}

}  // namespace tdesign
