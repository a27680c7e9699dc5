#include "tdesign/cluster.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "tdesign/random.hpp"

namespace tdesign {

std::string Outcome::str() const {
  std::string s(length, '0');
  for (int i = 0; i < length; ++i)
    if (bit(i)) s[length - 1 - i] = '1';
  return s;
}

Outcome Outcome::from_string(const std::string& s) {
  Outcome o;
  o.length = static_cast<int>(s.size());
  for (int i = 0; i < o.length; ++i) {
    char c = s[o.length - 1 - i];
    if (c != '0' && c != '1') throw Error("outcome string must be binary");
    if (c == '1') o.bits |= 1u << i;
  }
  return o;
}

namespace {

std::vector<double> normalized_angles(std::span<const double> angles) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out(angles.begin(), angles.end());
  for (double& phi : out) {
    if (phi < 0.0 || phi > std::numbers::pi) {
      double reduced = std::fmod(phi, two_pi);
      if (reduced < 0) reduced += two_pi;
      std::cerr << "warning: measurement angle " << phi
                << " outside [0, pi], reduced to " << reduced << "\n";
      phi = reduced;
    }
  }
  return out;
}

}  // namespace

PureState build_linear_cluster(int n, const Eigen::Vector2cd& input) {
  if (n < 2) throw Error("chain needs at least 2 qubits");
  if (std::abs(input.squaredNorm() - 1.0) > 1e-10)
    throw InvalidState("input state not normalized");

  PureState st;
  st.qubit_count = n;
  st.amplitudes = input;
  const Eigen::Vector2cd plus = ket_plus();
  for (int q = 2; q <= n; ++q) {
    Eigen::VectorXcd next(st.amplitudes.size() * 2);
    next << plus(0) * st.amplitudes, plus(1) * st.amplitudes;
    st.amplitudes = std::move(next);
  }
  for (int q = 1; q < n; ++q) apply_cz_adjacent(st.amplitudes, q);
  return st;
}

ComplexMatrix build_linear_cluster(int n, const Eigen::Matrix2cd& input) {
  if (n < 2) throw Error("chain needs at least 2 qubits");
  require_valid_state(input);

  ComplexMatrix rho = input;
  const Eigen::Matrix2cd plus = ket_plus() * ket_plus().adjoint();
  for (int q = 2; q <= n; ++q) rho = kron(plus, rho);

  // CZ is diagonal: conjugation is an elementwise sign pattern.
  const Eigen::Index dim = rho.rows();
  for (int q = 1; q < n; ++q) {
    const Eigen::Index mask = (Eigen::Index{1} << (q - 1)) | (Eigen::Index{1} << q);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const bool si = (i & mask) == mask;
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (si != ((j & mask) == mask)) rho(i, j) = -rho(i, j);
      }
    }
  }
  return rho;
}

void apply_single_qubit(Eigen::VectorXcd& psi, const Eigen::Matrix2cd& gate,
                        int qubit) {
  const Eigen::Index stride = Eigen::Index{1} << (qubit - 1);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    const Complex a = psi(i);
    const Complex b = psi(i | stride);
    psi(i) = gate(0, 0) * a + gate(0, 1) * b;
    psi(i | stride) = gate(1, 0) * a + gate(1, 1) * b;
  }
}

void apply_cz_adjacent(Eigen::VectorXcd& psi, int qubit) {
  const Eigen::Index mask =
      (Eigen::Index{1} << (qubit - 1)) | (Eigen::Index{1} << qubit);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if ((i & mask) == mask) psi(i) = -psi(i);
}

std::vector<Branch> measure_chain(const PureState& state,
                                  std::span<const double> angles) {
  const int n = state.qubit_count;
  if (static_cast<int>(angles.size()) != n - 1)
    throw AngleCountMismatch("need n-1 angles for an n-qubit chain");

  const auto phis = normalized_angles(angles);
  Eigen::VectorXcd psi = state.amplitudes;
  // Measuring in the phi-direction == apply R_z(phi) then H, then read the
  // computational basis.
  const Eigen::Matrix2cd h = hadamard();
  for (int q = 1; q < n; ++q)
    apply_single_qubit(psi, h * rotation_z(phis[q - 1]), q);

  const std::uint32_t branches = 1u << (n - 1);
  std::vector<Branch> out(branches);
  for (std::uint32_t m = 0; m < branches; ++m) {
    const Complex v0 = psi(m);
    const Complex v1 = psi(m | (Eigen::Index{1} << (n - 1)));
    Branch& br = out[m];
    br.outcome = {m, n - 1};
    br.probability = std::norm(v0) + std::norm(v1);
    if (br.probability < 1e-15) {
      br.output_state = 0.5 * Eigen::Matrix2cd::Identity();
      continue;
    }
    Eigen::Vector2cd v(v0, v1);
    br.output_state = v * v.adjoint() / br.probability;
  }
  return out;
}

std::vector<Branch> measure_chain(const ComplexMatrix& rho, int n,
                                  std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != n - 1)
    throw AngleCountMismatch("need n-1 angles for an n-qubit chain");
  if (rho.rows() != (Eigen::Index{1} << n))
    throw InvalidState("density matrix dimension does not match qubit count");

  const auto phis = normalized_angles(angles);
  ComplexMatrix work = rho;
  const Eigen::Matrix2cd h = hadamard();
  for (int q = 1; q < n; ++q) {
    // rho -> G rho G^dag, applied column- then row-wise
    const Eigen::Matrix2cd g = h * rotation_z(phis[q - 1]);
    for (Eigen::Index col = 0; col < work.cols(); ++col) {
      Eigen::VectorXcd column = work.col(col);
      apply_single_qubit(column, g, q);
      work.col(col) = column;
    }
    const Eigen::Matrix2cd gc = g.conjugate();
    for (Eigen::Index row = 0; row < work.rows(); ++row) {
      Eigen::VectorXcd r = work.row(row).transpose();
      apply_single_qubit(r, gc, q);
      work.row(row) = r.transpose();
    }
  }

  const std::uint32_t branches = 1u << (n - 1);
  const Eigen::Index top = Eigen::Index{1} << (n - 1);
  std::vector<Branch> out(branches);
  for (std::uint32_t m = 0; m < branches; ++m) {
    Eigen::Matrix2cd block;
    block << work(m, m), work(m, m | top), work(m | top, m),
        work(m | top, m | top);
    Branch& br = out[m];
    br.outcome = {m, n - 1};
    br.probability = block.trace().real();
    if (br.probability < 1e-15) {
      br.output_state = 0.5 * Eigen::Matrix2cd::Identity();
      continue;
    }
    br.output_state = block / br.probability;
  }
  return out;
}

Eigen::Matrix2cd logical_unitary(const Outcome& outcome,
                                 std::span<const double> angles) {
  if (outcome.length != static_cast<int>(angles.size()))
    throw LengthMismatch("outcome length differs from angle count");
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (int link = 0; link < outcome.length; ++link)
    u = link_unitary(outcome.bit(link), angles[link]) * u;
  return u;
}

CountsMap sample_counts(const std::vector<Branch>& branches,
                        std::int64_t shots, std::uint64_t seed) {
  std::map<std::string, double> dist;
  for (const auto& br : branches) dist[br.outcome.str()] = br.probability;
  return sample_counts(dist, shots, seed);
}

CountsMap sample_counts(const std::map<std::string, double>& distribution,
                        std::int64_t shots, std::uint64_t seed) {
  double total = 0.0;
  std::vector<double> probs;
  std::vector<const std::string*> keys;
  probs.reserve(distribution.size());
  for (const auto& [key, p] : distribution) {
    if (p < -1e-12) throw BadProbability("negative probability in distribution");
    probs.push_back(std::max(p, 0.0));
    keys.push_back(&key);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw BadProbability("distribution does not sum to 1");

  auto counts = multinomial(probs, shots, seed);
  CountsMap out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) out[*keys[i]] = counts[i];
  return out;
}

}  // namespace tdesign
