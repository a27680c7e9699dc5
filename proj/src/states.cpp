#include "tdesign/states.hpp"

#include <cmath>

namespace tdesign {

using namespace std::complex_literals;

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -1i, 1i, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Eigen::Matrix2cd rotation_z(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(-0.5i * phi);
  m(1, 1) = std::exp(0.5i * phi);
  return m;
}

Eigen::Matrix2cd link_unitary(int m, double phi) {
  Eigen::Matrix2cd u = hadamard() * rotation_z(phi);
  if (m & 1) u = hadamard() * pauli_z() * rotation_z(phi);
  return u;
}

Eigen::Matrix4cd cz_gate() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(3, 3) = -1;
  return m;
}

Eigen::Matrix4cd cx_gate() {
  // control = low bit (qubit 1), target = high bit
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1;
  m(3, 1) = 1;
  m(2, 2) = 1;
  m(1, 3) = 1;
  return m;
}

Eigen::Vector2cd ket_zero() { return Eigen::Vector2cd(1, 0); }
Eigen::Vector2cd ket_one() { return Eigen::Vector2cd(0, 1); }
Eigen::Vector2cd ket_plus() { return Eigen::Vector2cd(1, 1) / std::sqrt(2.0); }
Eigen::Vector2cd ket_plus_y() {
  return Eigen::Vector2cd(1, 1i) / std::sqrt(2.0);
}

Eigen::Vector2cd ket_phi(int m, double phi) {
  Complex sign = (m & 1) ? -1.0 : 1.0;
  return Eigen::Vector2cd(1, sign * std::exp(-1i * phi)) / std::sqrt(2.0);
}

Eigen::Matrix2cd bloch_state(double x, double y, double z) {
  Eigen::Matrix2cd m;
  m << 1.0 + z, Complex(x, -y), Complex(x, y), 1.0 - z;
  return 0.5 * m;
}

Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

void require_valid_state(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw InvalidState("state matrix not square");
  if (!is_hermitian(rho, 1e-10)) throw InvalidState("state not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-10)
    throw InvalidState("state trace differs from 1");
  if (min_eigenvalue(rho) < -1e-9) throw InvalidState("state not PSD");
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix d = u.adjoint() * u;
  d -= ComplexMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool phase_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  double overlap = std::abs((a.adjoint() * b).trace()) / a.rows();
  return std::abs(overlap - 1.0) <= tol;
}

double trace_distance(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace tdesign
