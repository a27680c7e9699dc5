#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tdesign/design.hpp"

namespace tdesign {

// rho -> (p/2) I + (1-p) rho
Eigen::Matrix2cd depolarise(const Eigen::Matrix2cd& rho, double p);

// chi of the depolarising channel: diag(1-3p/4, p/4, p/4, p/4).
ChiMatrix depolarising_chi(double p);

// Each member becomes depolarise(p) after the member unitary, in chi form.
UnitaryEnsemble noisy_ensemble_terminal(const UnitaryEnsemble& ensemble,
                                        double p);

// Chain ensemble with one depolarising step per cluster qubit: for a k-link
// chain the member channel is D_p applied k+1 times interleaved with (and
// commuting through) the link unitaries, in chi form.
UnitaryEnsemble noisy_ensemble_stepwise(std::span<const double> angles,
                                        double p);

enum class NoiseModel { kTerminal, kStepwise };

std::string to_string(NoiseModel model);

struct SweepRow {
  NoiseModel model;
  int t = 0;
  double radius = 0.0;
  double p = 0.0;
  double epsilon = 0.0;
};

struct SweepConfig {
  std::vector<double> radii = {0.66, 0.68, 0.69, 0.75, 0.81, 1.0};
  std::vector<double> p_grid;  // default: 200 evenly spaced on [0, 1]
  std::vector<double> angles;  // default: exact-3-design angles
};

std::vector<double> default_p_grid(int points = 200);

// Rows in (radius, p) order; each cell runs the design test on the sample
// regenerated at its radius.
std::vector<SweepRow> epsilon_vs_p_sweep(NoiseModel model, int t,
                                         const SweepConfig& config = {});

// Smallest p on the sweep grid whose epsilon reaches the target at the given
// radius, linearly interpolated between grid points. Throws Unreachable when
// the target exceeds the curve's maximum.
double infer_p_from_test(NoiseModel model, int t, double radius,
                         double epsilon_target,
                         const SweepConfig& config = {});

struct QubitFlips {
  double p01 = 0.0;  // P(read 1 | prepared 0)
  double p10 = 0.0;  // P(read 0 | prepared 1)
};

struct ConfusionModel {
  std::vector<QubitFlips> per_qubit;  // index 0 = qubit 1 (low bit)
};

struct CalibrationMatrix {
  int n = 0;
  Eigen::MatrixXd lambda;  // 2^n x 2^n, column-stochastic
};

// Tensor-product calibration matrix, little-endian qubit order.
CalibrationMatrix calibration_matrix(const ConfusionModel& model);

// Column j = relative frequencies observed when basis state j was prepared.
CalibrationMatrix calibration_from_counts(
    const std::vector<CountsMap>& prepared_basis_counts);

// Counts sampled from Lambda * p.
CountsMap apply_readout_noise(const std::map<std::string, double>& distribution,
                              const ConfusionModel& model, std::uint64_t seed,
                              std::int64_t shots);

// Lambda^{-1} p_exp followed by Euclidean projection onto the probability
// simplex. Throws SingularCalibration when cond(Lambda) > 1e8.
Eigen::VectorXd mitigate(const CalibrationMatrix& calibration,
                         const Eigen::VectorXd& p_exp);

// Constrained-least-squares alternative: argmin ||Lambda q - p_exp|| over the
// simplex, solved by projected gradient. Comparison mode only.
Eigen::VectorXd mitigate_least_squares(const CalibrationMatrix& calibration,
                                       const Eigen::VectorXd& p_exp);

// Sort-based Euclidean projection onto {x >= 0, sum x = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

}  // namespace tdesign
