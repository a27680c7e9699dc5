#include "tdesign/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tdesign/random.hpp"

namespace tdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw BadProbability("p must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

Eigen::Matrix2cd depolarise(const Eigen::Matrix2cd& rho, double p) {
  check_probability(p);
  return (1.0 - p) * rho + 0.5 * p * Eigen::Matrix2cd::Identity();
}

ChiMatrix depolarising_chi(double p) {
  check_probability(p);
  Eigen::Vector4d diag(1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p);
  return diag.cast<Complex>().asDiagonal();
}

UnitaryEnsemble noisy_ensemble_terminal(const UnitaryEnsemble& ensemble,
                                        double p) {
  check_probability(p);
  UnitaryEnsemble out;
  out.members.reserve(ensemble.members.size());
  for (const auto& member : ensemble.members) {
    if (!member.is_unitary())
      throw Error("terminal noise model needs unitary members");
    EnsembleMember noisy = member;
    noisy.channel = ChiMatrix(compose_chi(
        depolarising_chi(p),
        chi_of_unitary(std::get<Eigen::Matrix2cd>(member.channel))));
    out.members.push_back(std::move(noisy));
  }
  return out;
}

UnitaryEnsemble noisy_ensemble_stepwise(std::span<const double> angles,
                                        double p) {
  check_probability(p);
  const auto ideal = ensemble_from_angles(angles);
  const ChiMatrix step = depolarising_chi(p);
  UnitaryEnsemble out;
  out.members.reserve(ideal.members.size());
  for (const auto& member : ideal.members) {
    // One noise step per cluster qubit: D_p before the first link unitary
    // and after every link.
    ChiMatrix chi = step;
    for (int link = 0; link < member.outcome.length; ++link) {
      chi = compose_chi(
          chi_of_unitary(link_unitary(member.outcome.bit(link), angles[link])),
          chi);
      chi = compose_chi(step, chi);
    }
    EnsembleMember noisy = member;
    noisy.channel = chi;
    out.members.push_back(std::move(noisy));
  }
  return out;
}

std::string to_string(NoiseModel model) {
  return model == NoiseModel::kTerminal ? "terminal" : "stepwise";
}

std::vector<double> default_p_grid(int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

namespace {

SweepConfig fill_defaults(SweepConfig config) {
  if (config.p_grid.empty()) config.p_grid = default_p_grid();
  if (config.angles.empty()) config.angles = exact_three_design_angles();
  if (config.radii.empty()) throw Error("sweep needs at least one radius");
  return config;
}

UnitaryEnsemble noisy_ensemble(NoiseModel model,
                               std::span<const double> angles, double p) {
  if (model == NoiseModel::kStepwise)
    return noisy_ensemble_stepwise(angles, p);
  return noisy_ensemble_terminal(ensemble_from_angles(angles), p);
}

}  // namespace

std::vector<SweepRow> epsilon_vs_p_sweep(NoiseModel model, int t,
                                         const SweepConfig& config_in) {
  const SweepConfig config = fill_defaults(config_in);

  std::vector<UnitaryEnsemble> ensembles;
  ensembles.reserve(config.p_grid.size());
  for (double p : config.p_grid)
    ensembles.push_back(noisy_ensemble(model, config.angles, p));

  std::vector<SweepRow> rows;
  rows.reserve(config.radii.size() * config.p_grid.size());
  for (double radius : config.radii) {
    const auto sample = bloch_sample_spherical(radius);
    std::vector<EigenSystem> haar_eigs;
    haar_eigs.reserve(sample.states.size());
    for (const auto& rho : sample.states)
      haar_eigs.push_back(hermitian_eig(haar_moment(rho, t)));

    for (std::size_t ip = 0; ip < config.p_grid.size(); ++ip) {
      double eps = 0.0;
      for (std::size_t is = 0; is < sample.states.size(); ++is) {
        eps = std::max(eps, epsilon_for_state(ensemble_moment(ensembles[ip],
                                                              sample.states[is], t),
                                              haar_eigs[is]));
        if (std::isinf(eps)) break;
      }
      rows.push_back({model, t, radius, config.p_grid[ip], eps});
    }
  }
  return rows;
}

double infer_p_from_test(NoiseModel model, int t, double radius,
                         double epsilon_target, const SweepConfig& config_in) {
  if (epsilon_target < 0) throw Error("epsilon target must be non-negative");
  SweepConfig config = fill_defaults(config_in);
  config.radii = {radius};

  const auto rows = epsilon_vs_p_sweep(model, t, config);
  double prev_p = rows.front().p;
  double prev_eps = rows.front().epsilon;
  for (const auto& row : rows) {
    if (row.epsilon >= epsilon_target) {
      if (row.p == prev_p || row.epsilon == prev_eps ||
          std::isinf(row.epsilon))
        return row.p;
      const double f = (epsilon_target - prev_eps) / (row.epsilon - prev_eps);
      return prev_p + f * (row.p - prev_p);
    }
    prev_p = row.p;
    prev_eps = row.epsilon;
  }
  throw Unreachable("epsilon target exceeds the curve's maximum");
}

CalibrationMatrix calibration_matrix(const ConfusionModel& model) {
  CalibrationMatrix out;
  out.n = static_cast<int>(model.per_qubit.size());
  out.lambda = Eigen::MatrixXd::Ones(1, 1);
  for (const auto& flips : model.per_qubit) {
    check_probability(flips.p01);
    check_probability(flips.p10);
    Eigen::Matrix2d single;
    single << 1.0 - flips.p01, flips.p10, flips.p01, 1.0 - flips.p10;
    // higher qubits on the high bits
    Eigen::MatrixXd next(out.lambda.rows() * 2, out.lambda.cols() * 2);
    next.topLeftCorner(out.lambda.rows(), out.lambda.cols()) =
        single(0, 0) * out.lambda;
    next.topRightCorner(out.lambda.rows(), out.lambda.cols()) =
        single(0, 1) * out.lambda;
    next.bottomLeftCorner(out.lambda.rows(), out.lambda.cols()) =
        single(1, 0) * out.lambda;
    next.bottomRightCorner(out.lambda.rows(), out.lambda.cols()) =
        single(1, 1) * out.lambda;
    out.lambda = std::move(next);
  }
  return out;
}

CalibrationMatrix calibration_from_counts(
    const std::vector<CountsMap>& prepared_basis_counts) {
  const std::size_t dim = prepared_basis_counts.size();
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw MissingColumn("need one counts map per basis state (power of two)");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;

  CalibrationMatrix out;
  out.n = n;
  out.lambda = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto& counts = prepared_basis_counts[col];
    std::int64_t total = 0;
    for (const auto& [key, c] : counts) total += c;
    if (total <= 0)
      throw MissingColumn("no counts for prepared basis state " +
                          std::to_string(col));
    for (const auto& [key, c] : counts) {
      const auto outcome = Outcome::from_string(key);
      if (outcome.length != n)
        throw MissingColumn("outcome length differs from qubit count");
      out.lambda(outcome.bits, col) +=
          static_cast<double>(c) / static_cast<double>(total);
    }
  }
  return out;
}

CountsMap apply_readout_noise(const std::map<std::string, double>& distribution,
                              const ConfusionModel& model, std::uint64_t seed,
                              std::int64_t shots) {
  const auto calib = calibration_matrix(model);
  const Eigen::Index dim = calib.lambda.rows();

  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
  double total = 0.0;
  int length = calib.n;
  for (const auto& [key, prob] : distribution) {
    const auto outcome = Outcome::from_string(key);
    if (outcome.length != calib.n)
      throw Error("distribution keys do not match the confusion model size");
    p(outcome.bits) += prob;
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw BadProbability("distribution does not sum to 1");

  const Eigen::VectorXd noisy = calib.lambda * p;
  std::map<std::string, double> noisy_dist;
  for (Eigen::Index i = 0; i < dim; ++i) {
    Outcome o{static_cast<std::uint32_t>(i), length};
    noisy_dist[o.str()] = noisy(i);
  }
  return sample_counts(noisy_dist, shots, seed);
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index dim = v.size();
  std::vector<double> sorted(v.data(), v.data() + dim);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

Eigen::VectorXd mitigate(const CalibrationMatrix& calibration,
                         const Eigen::VectorXd& p_exp) {
  if (p_exp.size() != calibration.lambda.rows())
    throw DimensionMismatch("frequency vector does not match calibration");
  if (std::abs(p_exp.sum() - 1.0) > 1e-6)
    throw BadProbability("frequency vector does not sum to 1");

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      calibration.lambda, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().tail(1)(0);
  const double smax = svd.singularValues()(0);
  if (smin <= 0 || smax / smin > 1e8)
    throw SingularCalibration("calibration matrix condition number too large");

  const Eigen::VectorXd inverted = svd.solve(p_exp);
  return project_to_simplex(inverted);
}

Eigen::VectorXd mitigate_least_squares(const CalibrationMatrix& calibration,
                                       const Eigen::VectorXd& p_exp) {
  if (p_exp.size() != calibration.lambda.rows())
    throw DimensionMismatch("frequency vector does not match calibration");

  const Eigen::MatrixXd& lambda = calibration.lambda;
  const Eigen::MatrixXd gram = lambda.transpose() * lambda;
  const double lipschitz = gram.operatorNorm();
  const double step = 1.0 / lipschitz;

  Eigen::VectorXd q =
      Eigen::VectorXd::Constant(p_exp.size(), 1.0 / p_exp.size());
  for (int iter = 0; iter < 5000; ++iter) {
    const Eigen::VectorXd grad = gram * q - lambda.transpose() * p_exp;
    const Eigen::VectorXd next = project_to_simplex(q - step * grad);
    if ((next - q).lpNorm<Eigen::Infinity>() < 1e-14) return next;
    q = next;
  }
  return q;
}

}  // namespace tdesign
