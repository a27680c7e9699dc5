#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "tdesign/cluster.hpp"
#include "tdesign/tomography.hpp"

namespace tdesign {

struct EnsembleMember {
  Outcome outcome;
  double probability = 0.0;
  std::variant<Eigen::Matrix2cd, ChiMatrix> channel;  // unitary or chi

  bool is_unitary() const {
    return std::holds_alternative<Eigen::Matrix2cd>(channel);
  }
};

struct UnitaryEnsemble {
  std::vector<EnsembleMember> members;
};

struct BlochSample {
  std::vector<Eigen::Matrix2cd> states;
  double r_max = 1.0;
};

struct TestReport {
  int t = 0;
  double radius = 1.0;
  double epsilon = 0.0;  // +infinity when the inequality is unsatisfiable
  bool passing = false;  // epsilon <= 0.5
  int n_states = 0;
  std::vector<double> per_state_epsilon;
};

inline constexpr double kPassingEpsilon = 0.5;

std::vector<double> exact_three_design_angles();
std::vector<double> approx_two_design_angles();

// All 2^k logical unitaries of a k-link chain with uniform probabilities.
UnitaryEnsemble ensemble_from_angles(std::span<const double> angles);

// 32 members, probability 1/32 each.
UnitaryEnsemble exact_three_design();

// 16 members, probability 1/16 each.
UnitaryEnsemble approx_two_design();

// E^t_H(rho^{ox t}) computed by averaging the exact 3-design, valid for
// t in {1,2,3}; UnsupportedOrder otherwise.
ComplexMatrix haar_moment(const Eigen::Matrix2cd& rho, int t);

// sum_i p_i (C_i(rho))^{ox t}; unitary members use U rho U^dag, chi members
// use apply_chi.
ComplexMatrix ensemble_moment(const UnitaryEnsemble& ensemble,
                              const Eigen::Matrix2cd& rho, int t);

// Smallest eps >= 0 with (1-eps) E <= D <= (1+eps) E, or +infinity when D
// carries weight outside the support of E.
double epsilon_for_state(const ComplexMatrix& moment,
                         const ComplexMatrix& haar);

// Same test against a pre-diagonalized Haar moment; sweeps reuse the
// eigendecomposition across the p grid.
double epsilon_for_state(const ComplexMatrix& moment,
                         const EigenSystem& haar_eig);

// 10 radii evenly spaced on [0, r_max] x 10 azimuths {k 2pi/10} x
// 10 polar angles {k pi/10}: 1000 states.
BlochSample bloch_sample_spherical(double r_max = 1.0);

// Max epsilon over sample states with Bloch norm <= radius + 1e-12.
TestReport design_test(const UnitaryEnsemble& ensemble, int t,
                       const BlochSample& sample, double radius);

struct RadiusSearchResult {
  double radius = 0.0;
  double epsilon = 0.0;
};

// Largest radius on the 0.01 grid over (0, 1] whose regenerated sample
// passes eps <= eps_max; (0, +infinity) if the smallest shell already fails.
RadiusSearchResult truncation_radius_search(const UnitaryEnsemble& ensemble,
                                            int t,
                                            double eps_max = kPassingEpsilon);

// Fraction of valid states (norm <= 1) on the inclusive 20^3 grid over
// [-1,1]^3 with eps <= eps_max.
double passing_fraction(const UnitaryEnsemble& ensemble, int t,
                        double eps_max = kPassingEpsilon);

}  // namespace tdesign
