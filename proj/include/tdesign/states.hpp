#pragma once

#include <Eigen/Dense>

#include "tdesign/numerics.hpp"

namespace tdesign {

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd hadamard();

// e^{-i Z phi / 2}
Eigen::Matrix2cd rotation_z(double phi);

// Link unitary H Z^m R_z(phi), m in {0,1}.
Eigen::Matrix2cd link_unitary(int m, double phi);

// diag(1, 1, 1, -1)
Eigen::Matrix4cd cz_gate();
Eigen::Matrix4cd cx_gate();

Eigen::Vector2cd ket_zero();
Eigen::Vector2cd ket_one();
Eigen::Vector2cd ket_plus();
Eigen::Vector2cd ket_plus_y();

// (|0> + (-1)^m e^{-i phi} |1>) / sqrt(2): the phi-direction measurement basis.
Eigen::Vector2cd ket_phi(int m, double phi);

// rho = (I + x X + y Y + z Z) / 2. Caller guarantees |r| <= 1.
Eigen::Matrix2cd bloch_state(double x, double y, double z);

// Pauli expectation values (x, y, z) of a single-qubit state.
Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho);

// Hermitian, unit trace, PSD; throws InvalidState.
void require_valid_state(const ComplexMatrix& rho);

bool is_unitary(const ComplexMatrix& u, double tol);

// |Tr(a^dag b)| / dim == 1 within tol: equality up to global phase.
bool phase_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-10);

double trace_distance(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace tdesign
