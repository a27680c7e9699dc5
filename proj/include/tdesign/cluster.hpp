#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tdesign/states.hpp"

namespace tdesign {

// Measurement outcomes of a k-link chain, little endian: bit i is the
// outcome on qubit i+1, so the displayed string has the last-measured qubit
// leftmost.
struct Outcome {
  std::uint32_t bits = 0;
  int length = 0;

  int bit(int link) const { return (bits >> link) & 1; }  // link 0-based
  std::string str() const;
  static Outcome from_string(const std::string& s);

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct PureState {
  int qubit_count = 0;
  Eigen::VectorXcd amplitudes;  // 2^n entries, qubit 1 on the low bit
};

struct Branch {
  Outcome outcome;
  double probability = 0.0;
  Eigen::Matrix2cd output_state;  // normalized state of qubit n
};

using CountsMap = std::map<std::string, std::int64_t>;

// Qubit 1 carries the input, qubits 2..n start in |+>, CZ between each
// adjacent pair. Throws InvalidState for non-normalized input.
PureState build_linear_cluster(int n, const Eigen::Vector2cd& input);
ComplexMatrix build_linear_cluster(int n, const Eigen::Matrix2cd& input);

// Projects qubits 1..n-1 onto the phi_i-direction bases in order and returns
// all 2^{n-1} branches with exact probabilities. Angles outside [0, pi] are
// reduced mod 2pi with a warning to stderr.
std::vector<Branch> measure_chain(const PureState& state,
                                  std::span<const double> angles);
std::vector<Branch> measure_chain(const ComplexMatrix& rho, int n,
                                  std::span<const double> angles);

// U_{m_{n-1}}(phi_{n-1}) ... U_{m_1}(phi_1) with U_m(phi) = H Z^m R_z(phi).
Eigen::Matrix2cd logical_unitary(const Outcome& outcome,
                                 std::span<const double> angles);

CountsMap sample_counts(const std::vector<Branch>& branches,
                        std::int64_t shots, std::uint64_t seed);
CountsMap sample_counts(const std::map<std::string, double>& distribution,
                        std::int64_t shots, std::uint64_t seed);

// In-place single-qubit gate / adjacent CZ on an amplitude vector
// (qubit index 1-based, qubit 1 on the low bit).
void apply_single_qubit(Eigen::VectorXcd& psi, const Eigen::Matrix2cd& gate,
                        int qubit);
void apply_cz_adjacent(Eigen::VectorXcd& psi, int qubit);

}  // namespace tdesign
