#include "tdesign/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace tdesign {

using namespace std::complex_literals;

namespace {

const std::array<Eigen::Matrix2cd, 4>& chi_basis() {
  static const std::array<Eigen::Matrix2cd, 4> basis = {
      Eigen::Matrix2cd::Identity(), pauli_x(), -1i * pauli_y(), pauli_z()};
  return basis;
}

std::int64_t total_counts(const CountsMap& counts) {
  std::int64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  return total;
}

double expectation_from_counts(const CountsMap& counts) {
  const std::int64_t total = total_counts(counts);
  if (total <= 0) throw EmptyCounts("counts map is empty");
  std::int64_t n0 = 0;
  auto it = counts.find("0");
  if (it != counts.end()) n0 = it->second;
  return static_cast<double>(2 * n0 - total) / static_cast<double>(total);
}

}  // namespace

Eigen::Vector4cd pauli_coefficients(const Eigen::Matrix2cd& m) {
  Eigen::Vector4cd c;
  const auto& basis = chi_basis();
  for (int k = 0; k < 4; ++k) c(k) = 0.5 * (basis[k].adjoint() * m).trace();
  return c;
}

Eigen::Matrix2cd state_from_expectations(double x, double y, double z,
                                         bool* rescaled) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (rescaled) *rescaled = false;
  if (norm > 1.0) {
    x /= norm;
    y /= norm;
    z /= norm;
    if (rescaled) *rescaled = true;
  }
  return bloch_state(x, y, z);
}

Eigen::Matrix2cd state_tomography(const CountsMap& counts_x,
                                  const CountsMap& counts_y,
                                  const CountsMap& counts_z) {
  return state_from_expectations(expectation_from_counts(counts_x),
                                 expectation_from_counts(counts_y),
                                 expectation_from_counts(counts_z));
}

ChiMatrix chi_from_probe_outputs(const Eigen::Matrix2cd& rho0,
                                 const Eigen::Matrix2cd& rho1,
                                 const Eigen::Matrix2cd& rho_plus,
                                 const Eigen::Matrix2cd& rho_plus_y,
                                 ChiRepair* repair) {
  for (const auto* rho : {&rho0, &rho1, &rho_plus, &rho_plus_y})
    require_valid_state(*rho);

  const Eigen::Matrix2cd r1 = rho0;
  const Eigen::Matrix2cd r4 = rho1;
  const Eigen::Matrix2cd r2 =
      rho_plus + 1i * rho_plus_y - 0.5 * (1.0 + 1i) * (r1 + r4);
  const Eigen::Matrix2cd r3 =
      rho_plus - 1i * rho_plus_y - 0.5 * (1.0 - 1i) * (r1 + r4);

  Eigen::Matrix4cd middle;
  middle.block<2, 2>(0, 0) = r1;
  middle.block<2, 2>(0, 2) = r2;
  middle.block<2, 2>(2, 0) = r3;
  middle.block<2, 2>(2, 2) = r4;

  Eigen::Matrix4cd k;
  k.block<2, 2>(0, 0) = Eigen::Matrix2cd::Identity();
  k.block<2, 2>(0, 2) = pauli_x();
  k.block<2, 2>(2, 0) = pauli_x();
  k.block<2, 2>(2, 2) = -Eigen::Matrix2cd::Identity();

  ChiMatrix chi = 0.25 * k * middle * k;

  // Hermitize and clip to PSD; shot noise legitimately produces small
  // negative eigenvalues here.
  auto es = hermitian_eig(hermitize(chi));
  double clipped = 0.0;
  Eigen::Vector4d vals = es.values;
  for (int i = 0; i < 4; ++i) {
    if (vals(i) < 0) {
      clipped = std::min(clipped, vals(i));
      vals(i) = 0;
    }
  }
  if (repair) repair->clipped = clipped;
  return es.vectors * vals.asDiagonal() * es.vectors.adjoint();
}

ChiMatrix chi_of_unitary(const Eigen::Matrix2cd& u) {
  if (!is_unitary(u, 1e-10)) throw NotUnitary("matrix is not unitary");
  const Eigen::Vector4cd c = pauli_coefficients(u);
  return c * c.adjoint();
}

Eigen::Matrix2cd apply_chi(const ChiMatrix& chi, const Eigen::Matrix2cd& rho) {
  if (std::abs(chi.trace().real() - 1.0) > tolerances().chi_trace_dev ||
      std::abs(chi.trace().imag()) > tolerances().chi_trace_dev)
    throw NonPhysicalChi("chi trace deviates from 1 beyond repair");

  const auto& basis = chi_basis();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int m = 0; m < 4; ++m) {
    const Eigen::Matrix2cd left = basis[m] * rho;
    for (int n = 0; n < 4; ++n)
      out += chi(m, n) * left * basis[n].adjoint();
  }
  out = 0.5 * (out + out.adjoint().eval());
  return out / out.trace().real();
}

ChiMatrix compose_chi(const ChiMatrix& after, const ChiMatrix& before) {
  auto push = [&](const Eigen::Vector2cd& ket) {
    return apply_chi(after,
                     apply_chi(before, Eigen::Matrix2cd(ket * ket.adjoint())));
  };
  return chi_from_probe_outputs(push(ket_zero()), push(ket_one()),
                                push(ket_plus()), push(ket_plus_y()));
}

double channel_fidelity(const ChiMatrix& chi_e, const ChiMatrix& chi_c,
                        ChiRepair* repair) {
  auto clip_psd = [&](const ChiMatrix& chi, double& clipped) -> ChiMatrix {
    if (std::abs(chi.trace().real() - 1.0) > tolerances().chi_trace_dev ||
        std::abs(chi.trace().imag()) > tolerances().chi_trace_dev)
      throw NonPhysicalChi("chi trace deviates from 1 beyond repair");
    auto es = hermitian_eig(hermitize(chi));
    Eigen::Vector4d vals = es.values;
    for (int i = 0; i < 4; ++i) {
      if (vals(i) < 0) {
        clipped = std::min(clipped, vals(i));
        vals(i) = 0;
      }
    }
    return es.vectors * vals.asDiagonal() * es.vectors.adjoint();
  };

  double clipped = 0.0;
  const ChiMatrix a = clip_psd(chi_e, clipped);
  const ChiMatrix b = clip_psd(chi_c, clipped);
  if (repair) repair->clipped = clipped;

  const ChiMatrix root = psd_sqrt(a);
  const ChiMatrix inner = hermitize(root * b * root);
  auto es = hermitian_eig(inner);
  double fidelity = 0.0;
  for (int i = 0; i < 4; ++i)
    if (es.values(i) > 0) fidelity += std::sqrt(es.values(i));
  return std::clamp(fidelity, 0.0, 1.0);
}

ChiMatrix repair_chi(const ChiMatrix& chi) {
  auto es = hermitian_eig(hermitize(chi));
  if (es.values(0) < tolerances().chi_clip_abort)
    throw NonPhysicalChi("chi eigenvalue " + std::to_string(es.values(0)) +
                         " below repair threshold");
  if (es.values(0) >= 0) return hermitize(chi);
  Eigen::Vector4d vals = es.values.cwiseMax(0.0);
  ChiMatrix out = es.vectors * vals.asDiagonal() * es.vectors.adjoint();
  return out / out.trace().real();
}

}  // namespace tdesign
