#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tdesign/identity_bench.hpp"

using namespace tdesign;
using namespace tdesign::testing;

TEST_CASE("pauli_correction on short chains") {
  CHECK(pauli_correction(Outcome::from_string("00")).label == 'I');
  CHECK(pauli_correction(Outcome::from_string("10")).label == 'X');
  // U_0(0) U_1(0) = H * HZ = Z, corrected by Z
  CHECK(pauli_correction(Outcome::from_string("01")).label == 'Z');

  CHECK_THROWS_AS(pauli_correction(Outcome::from_string("011")), OddLinkCount);
}

TEST_CASE("pauli_correction cancels the chain unitary for all outcomes") {
  for (int n : {3, 5, 7}) {
    const std::vector<double> angles(n - 1, 0.0);
    for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
      const Outcome outcome{m, n - 1};
      const auto correction = pauli_correction(outcome);
      const Eigen::Matrix2cd u = logical_unitary(outcome, angles);
      CHECK(phase_equal(correction.matrix * u,
                        Eigen::Matrix2cd::Identity(), 1e-12));
    }
  }
}

TEST_CASE("identity_bench noiseless gives the identity channel") {
  for (int n : {3, 5}) {
    const auto report = identity_bench(n, 0.0);
    CHECK(report.chi_average(0, 0).real() >= 1.0 - 1e-9);
    CHECK(report.inferred_p == 0.0);
    for (const auto& [outcome, fidelity] : report.per_outcome_fidelity)
      CHECK(fidelity >= 1.0 - 1e-9);
  }
}

TEST_CASE("identity_bench with noise is diagonal-dominant") {
  const auto report = identity_bench(3, 0.08);
  const ChiMatrix& chi = report.chi_average;
  for (int k = 0; k < 4; ++k) CHECK(chi(k, k).real() > 0.0);
  double off = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c) off = std::max(off, std::abs(chi(r, c)));
  CHECK(off < 1e-9);
  CHECK(chi(0, 0).real() < 1.0);
}

TEST_CASE("longer chains accumulate more depolarisation") {
  const double p = 0.05;
  double last = 1.1;
  for (int n : {3, 5, 7}) {
    const auto report = identity_bench(n, p);
    const double chi00 = report.chi_average(0, 0).real();
    CHECK(chi00 < last);
    last = chi00;
  }
}

TEST_CASE("identity_bench validates arguments") {
  CHECK_THROWS_AS(identity_bench(4, 0.0), EvenN);
  CHECK_THROWS_AS(identity_bench(3, 1.5), BadProbability);
}

TEST_CASE("identity_bench shot mode approaches the exact channel") {
  IdentityBenchOptions options;
  options.shots = 40000;
  options.seed = 11;
  const auto sampled = identity_bench(3, 0.05, options);
  const auto exact = identity_bench(3, 0.05);
  CHECK((sampled.chi_average - exact.chi_average).cwiseAbs().maxCoeff() <
        0.02);
  CHECK(std::abs(sampled.inferred_p - 0.05) < 0.01);

  // deterministic given the seed
  const auto again = identity_bench(3, 0.05, options);
  CHECK((sampled.chi_average - again.chi_average).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("uniform averaging equals probability weighting on ideal chains") {
  IdentityBenchOptions uniform;
  uniform.uniform_average = true;
  const auto weighted = identity_bench(3, 0.04);
  const auto flat = identity_bench(3, 0.04, uniform);
  CHECK((weighted.chi_average - flat.chi_average).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("infer_p recovers synthetic parameters") {
  CHECK(infer_p(chi_of_unitary(Eigen::Matrix2cd::Identity()), 3) == 0.0);

  for (double p_true : {0.042, 0.127}) {
    for (int n : {3, 7}) {
      const double q = 1.0 - std::pow(1.0 - p_true, n);
      const double recovered = infer_p(depolarising_chi(q), n);
      CHECK(std::abs(recovered - p_true) <= 1e-4);
    }
  }
}

TEST_CASE("infer_p on the fully depolarising channel") {
  // model channel approaches full depolarisation as p -> 1
  const double p = infer_p(depolarising_chi(1.0), 3);
  CHECK(p > 0.99);
}

TEST_CASE("identity_bench recovery loop") {
  for (double p : {0.042, 0.062}) {
    const auto report = identity_bench(5, p);
    CHECK(std::abs(report.inferred_p - p) <= 1e-4);
  }
}
