#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: Monte-Carlo Haar twirls, the closed-form two-copy twirl, exhaustive
// simplex projection, and partial traces for reduced-state checks.

#include <Eigen/Dense>
#include <cstdint>

#include "tdesign/numerics.hpp"
#include "tdesign/random.hpp"

namespace tdesign::testing {

double gaussian(UniformSource& rng);

// Haar on SU(2) via a uniform quaternion; global phase is irrelevant for
// twirls.
Eigen::Matrix2cd haar_random_unitary(UniformSource& rng);

// Uniform over the Bloch ball.
Eigen::Matrix2cd random_ball_state(UniformSource& rng);

ComplexMatrix random_hermitian(int dim, UniformSource& rng);
ComplexMatrix random_psd(int dim, UniformSource& rng);

// Row-major vectorization helpers.
Eigen::VectorXcd vec_row(const ComplexMatrix& m);
ComplexMatrix unvec_row(const Eigen::VectorXcd& v, int dim);

// (1/N) sum_k (U_k^{ox t}) o conj(U_k^{ox t}) acting on row-major vec.
ComplexMatrix mc_haar_twirl_superop(int t, int samples, std::uint64_t seed);

ComplexMatrix apply_superop(const ComplexMatrix& superop,
                            const ComplexMatrix& m);

// Direct Monte-Carlo average of U^{ox t} rho^{ox t} U^{ox t dag}.
ComplexMatrix mc_haar_moment(const Eigen::Matrix2cd& rho, int t, int samples,
                             std::uint64_t seed);

// Closed-form E^2_H(rho ox rho) from the symmetric/antisymmetric projectors.
ComplexMatrix exact_two_copy_twirl(const Eigen::Matrix2cd& rho);

// Exhaustive active-set projection onto the probability simplex; dims <= 16.
Eigen::VectorXd brute_force_simplex_projection(const Eigen::VectorXd& v);

// Reduced state of qubit q (1-based, low bit = qubit 1) of an n-qubit pure
// state.
Eigen::Matrix2cd reduced_state(const Eigen::VectorXcd& amplitudes, int qubit);

}  // namespace tdesign::testing
