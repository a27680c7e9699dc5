#include "tdesign/design.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace tdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Matrix2cd member_output(const EnsembleMember& member,
                               const Eigen::Matrix2cd& rho) {
  if (member.is_unitary()) {
    const auto& u = std::get<Eigen::Matrix2cd>(member.channel);
    return u * rho * u.adjoint();
  }
  return apply_chi(std::get<ChiMatrix>(member.channel), rho);
}

// U^{ox t} for the 32 exact-3-design unitaries, built once per order.
const std::vector<ComplexMatrix>& exact3_tensor_table(int t) {
  static const std::array<std::vector<ComplexMatrix>, 3> tables = [] {
    std::array<std::vector<ComplexMatrix>, 3> tbl;
    const auto ensemble = exact_three_design();
    for (int order = 1; order <= 3; ++order) {
      tbl[order - 1].reserve(ensemble.members.size());
      for (const auto& member : ensemble.members)
        tbl[order - 1].push_back(
            kron_power(std::get<Eigen::Matrix2cd>(member.channel), order));
    }
    return tbl;
  }();
  return tables[t - 1];
}

}  // namespace

std::vector<double> exact_three_design_angles() {
  const double pi = std::numbers::pi;
  return {0.0, pi / 4, std::acos(std::sqrt(1.0 / 3.0)), pi / 4, 0.0};
}

std::vector<double> approx_two_design_angles() {
  const double pi = std::numbers::pi;
  return {0.0, pi / 4, pi / 4, 0.0};
}

UnitaryEnsemble ensemble_from_angles(std::span<const double> angles) {
  const int links = static_cast<int>(angles.size());
  const std::uint32_t count = 1u << links;
  UnitaryEnsemble ensemble;
  ensemble.members.reserve(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    EnsembleMember member;
    member.outcome = {m, links};
    member.probability = 1.0 / static_cast<double>(count);
    member.channel = logical_unitary(member.outcome, angles);
    ensemble.members.push_back(std::move(member));
  }
  return ensemble;
}

UnitaryEnsemble exact_three_design() {
  return ensemble_from_angles(exact_three_design_angles());
}

UnitaryEnsemble approx_two_design() {
  return ensemble_from_angles(approx_two_design_angles());
}

ComplexMatrix haar_moment(const Eigen::Matrix2cd& rho, int t) {
  if (t < 1 || t > 3)
    throw UnsupportedOrder("the exact-design average is only valid to t=3");
  const auto& table = exact3_tensor_table(t);
  const ComplexMatrix rho_t = kron_power(rho, t);
  ComplexMatrix acc = ComplexMatrix::Zero(rho_t.rows(), rho_t.cols());
  for (const auto& ut : table) acc += ut * rho_t * ut.adjoint();
  return acc / static_cast<double>(table.size());
}

ComplexMatrix ensemble_moment(const UnitaryEnsemble& ensemble,
                              const Eigen::Matrix2cd& rho, int t) {
  const Eigen::Index dim = Eigen::Index{1} << t;
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (const auto& member : ensemble.members)
    acc += member.probability * kron_power(member_output(member, rho), t);
  return acc;
}

double epsilon_for_state(const ComplexMatrix& moment,
                         const ComplexMatrix& haar) {
  if (moment.rows() != haar.rows() || moment.cols() != haar.cols())
    throw DimensionMismatch("moment and Haar moment dimensions differ");
  return epsilon_for_state(moment, hermitian_eig(haar));
}

double epsilon_for_state(const ComplexMatrix& moment,
                         const EigenSystem& es) {
  if (moment.rows() != es.vectors.rows() || moment.cols() != es.vectors.rows())
    throw DimensionMismatch("moment and Haar moment dimensions differ");

  const double lmax = es.values(es.values.size() - 1);
  const double cut = tolerances().support_rel_cut * lmax;

  Eigen::Index first = 0;
  while (first < es.values.size() && es.values(first) <= cut) ++first;
  const Eigen::Index rank = es.values.size() - first;
  if (rank == 0) return kInf;

  if (first > 0) {
    const ComplexMatrix null_basis = es.vectors.leftCols(first);
    const double leak =
        (null_basis.adjoint() * moment * null_basis).trace().real();
    if (leak > tolerances().support_leak) return kInf;
  }

  const ComplexMatrix support = es.vectors.rightCols(rank);
  const Eigen::VectorXd inv_root =
      es.values.tail(rank).cwiseSqrt().cwiseInverse();
  const ComplexMatrix scaled = inv_root.asDiagonal() *
                               (support.adjoint() * moment * support) *
                               inv_root.asDiagonal();
  const auto ratios = hermitian_eig(hermitize(scaled)).values;
  return std::max({ratios(rank - 1) - 1.0, 1.0 - ratios(0), 0.0});
}

BlochSample bloch_sample_spherical(double r_max) {
  const double pi = std::numbers::pi;
  BlochSample sample;
  sample.r_max = r_max;
  sample.states.reserve(1000);
  for (int ir = 0; ir < 10; ++ir) {
    const double r = r_max * ir / 9.0;
    for (int ip = 0; ip < 10; ++ip) {
      const double phi = 2.0 * pi * ip / 10.0;
      for (int it = 0; it < 10; ++it) {
        const double theta = pi * it / 10.0;
        sample.states.push_back(bloch_state(r * std::sin(theta) * std::cos(phi),
                                            r * std::sin(theta) * std::sin(phi),
                                            r * std::cos(theta)));
      }
    }
  }
  return sample;
}

TestReport design_test(const UnitaryEnsemble& ensemble, int t,
                       const BlochSample& sample, double radius) {
  if (radius <= 0.0 || radius > 1.0)
    throw Error("radius must lie in (0, 1]");

  TestReport report;
  report.t = t;
  report.radius = radius;
  for (const auto& rho : sample.states) {
    if (bloch_vector(rho).norm() > radius + 1e-12) continue;
    const double eps =
        epsilon_for_state(ensemble_moment(ensemble, rho, t), haar_moment(rho, t));
    report.per_state_epsilon.push_back(eps);
    report.epsilon = std::max(report.epsilon, eps);
  }
  report.n_states = static_cast<int>(report.per_state_epsilon.size());
  if (report.n_states == 0)
    throw EmptyFilteredSample("no sample states within the radius");
  report.passing = report.epsilon <= kPassingEpsilon;
  return report;
}

RadiusSearchResult truncation_radius_search(const UnitaryEnsemble& ensemble,
                                            int t, double eps_max) {
  if (eps_max <= 0.0) throw Error("eps_max must be positive");

  RadiusSearchResult best{0.0, kInf};
  for (int step = 1; step <= 100; ++step) {
    const double radius = step / 100.0;
    const auto report =
        design_test(ensemble, t, bloch_sample_spherical(radius), radius);
    if (report.epsilon <= eps_max) best = {radius, report.epsilon};
  }
  return best;
}

double passing_fraction(const UnitaryEnsemble& ensemble, int t,
                        double eps_max) {
  std::int64_t valid = 0;
  std::int64_t passed = 0;
  for (int ix = 0; ix < 20; ++ix) {
    const double x = -1.0 + 2.0 * ix / 19.0;
    for (int iy = 0; iy < 20; ++iy) {
      const double y = -1.0 + 2.0 * iy / 19.0;
      for (int iz = 0; iz < 20; ++iz) {
        const double z = -1.0 + 2.0 * iz / 19.0;
        if (x * x + y * y + z * z > 1.0 + 1e-12) continue;
        ++valid;
        const Eigen::Matrix2cd rho = bloch_state(x, y, z);
        const double eps = epsilon_for_state(ensemble_moment(ensemble, rho, t),
                                             haar_moment(rho, t));
        if (eps <= eps_max) ++passed;
      }
    }
  }
  return static_cast<double>(passed) / static_cast<double>(valid);
}

}  // namespace tdesign
