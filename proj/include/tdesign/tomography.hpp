#pragma once

#include <Eigen/Dense>

#include "tdesign/cluster.hpp"
#include "tdesign/states.hpp"

namespace tdesign {

// Process matrix in the fixed operator basis E0=I, E1=X, E2=-iY, E3=Z.
using ChiMatrix = Eigen::Matrix4cd;

// Coefficients of m in the {I, X, -iY, Z} basis: m = sum_k c_k E_k.
Eigen::Vector4cd pauli_coefficients(const Eigen::Matrix2cd& m);

// rho = (I + x X + y Y + z Z)/2; Bloch vectors outside the unit ball are
// rescaled onto it and *rescaled (when given) is set.
Eigen::Matrix2cd state_from_expectations(double x, double y, double z,
                                         bool* rescaled = nullptr);

// Linear-inversion state tomography from X/Y/Z-basis counts ("0" / "1" keys).
Eigen::Matrix2cd state_tomography(const CountsMap& counts_x,
                                  const CountsMap& counts_y,
                                  const CountsMap& counts_z);

struct ChiRepair {
  double clipped = 0.0;  // most negative eigenvalue removed, 0 if none
};

// chi of the channel that maps the probes |0>, |1>, |+>, |+_y> to the given
// outputs. Result is Hermitized and clipped to PSD; the clip magnitude is
// reported through *repair when given.
ChiMatrix chi_from_probe_outputs(const Eigen::Matrix2cd& rho0,
                                 const Eigen::Matrix2cd& rho1,
                                 const Eigen::Matrix2cd& rho_plus,
                                 const Eigen::Matrix2cd& rho_plus_y,
                                 ChiRepair* repair = nullptr);

// Rank-1 trace-1 chi of conjugation by u. Throws NotUnitary.
ChiMatrix chi_of_unitary(const Eigen::Matrix2cd& u);

// sum_{mn} chi_{mn} E_m rho E_n^dag, Hermitized and renormalized to trace 1.
// Throws NonPhysicalChi when Tr(chi) deviates from 1 by more than the
// configured guard.
Eigen::Matrix2cd apply_chi(const ChiMatrix& chi, const Eigen::Matrix2cd& rho);

// chi of (after o before): composition via the channels' action on the
// probe states, exact for physical inputs.
ChiMatrix compose_chi(const ChiMatrix& after, const ChiMatrix& before);

// Uhlmann-type overlap Tr sqrt(sqrt(chi_e) chi_c sqrt(chi_e)), clamped to
// [0, 1]. Negative input eigenvalues are clipped to 0 first; the clip
// magnitudes are reported through *repair when given.
double channel_fidelity(const ChiMatrix& chi_e, const ChiMatrix& chi_c,
                        ChiRepair* repair = nullptr);

// Strict physicality repair for exact pipelines: Hermitize, clip eigenvalues
// in (chi_clip_abort, 0), renormalize the trace to 1. Larger violations
// throw NonPhysicalChi.
ChiMatrix repair_chi(const ChiMatrix& chi);

}  // namespace tdesign
