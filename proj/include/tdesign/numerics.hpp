#pragma once

#include <Eigen/Dense>
#include <complex>

#include "tdesign/errors.hpp"

namespace tdesign {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Numeric thresholds shared across modules. Mutable through config() so a
// test harness can tighten them for noiseless runs; set once at startup,
// values are read-only afterwards.
struct Tolerances {
  double hermitian_check = 1e-10;  // symmetry tolerance for eig/sqrt inputs
  double eig_clip_floor = -1e-9;   // psd_sqrt clips eigenvalues above this
  double too_negative = -1e-6;     // psd_sqrt aborts below this
  double support_rel_cut = 1e-9;   // eigenvalues of E below cut*max -> zero
  double support_leak = 1e-9;      // moment weight outside supp(E) -> infinity
  double chi_trace_dev = 0.05;     // max |Tr(chi)-1| accepted by channel ops
  double chi_clip_abort = -1e-6;   // repair_chi aborts below this
};

Tolerances& tolerances();

bool is_hermitian(const ComplexMatrix& a, double tol);

// (A + A^dag)/2
ComplexMatrix hermitize(const ComplexMatrix& a);

// Kronecker product, row-major bit convention: kron(a, b) puts b on the
// low-order index bits.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// a^{\otimes t}
ComplexMatrix kron_power(const ComplexMatrix& a, int t);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // columns, orthonormal
};

// Throws NotHermitian if the symmetry tolerance is violated.
EigenSystem hermitian_eig(const ComplexMatrix& h);

// Hermitian PSD square root. Eigenvalues in [eig_clip_floor, 0) are clipped
// to zero; anything below too_negative throws TooNegative.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

double min_eigenvalue(const ComplexMatrix& h);

}  // namespace tdesign
