#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "tdesign/noise.hpp"

using namespace tdesign;
using namespace tdesign::testing;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("depolarise") {
  UniformSource rng(1);
  const Eigen::Matrix2cd rho = random_ball_state(rng);
  CHECK(max_abs(depolarise(rho, 0.0) - rho) == 0.0);
  CHECK(max_abs(depolarise(rho, 1.0) - 0.5 * Eigen::Matrix2cd::Identity()) <
        1e-15);

  const Eigen::Matrix2cd zero = ket_zero() * ket_zero().adjoint();
  const Eigen::Matrix2cd half = depolarise(zero, 0.5);
  CHECK(half(0, 0).real() == doctest::Approx(0.75));
  CHECK(half(1, 1).real() == doctest::Approx(0.25));

  CHECK_THROWS_AS(depolarise(rho, -0.1), BadProbability);
  CHECK_THROWS_AS(depolarise(rho, 1.1), BadProbability);
}

TEST_CASE("depolarise contracts the Bloch vector by 1-p") {
  UniformSource rng(2);
  for (double p : {0.1, 0.35, 0.8}) {
    const Eigen::Matrix2cd rho = random_ball_state(rng);
    const Eigen::Vector3d before = bloch_vector(rho);
    const Eigen::Vector3d after = bloch_vector(depolarise(rho, p));
    CHECK((after - (1.0 - p) * before).norm() < 1e-14);
  }
}

TEST_CASE("stepwise composition contracts by (1-p)^k through unitaries") {
  UniformSource rng(3);
  const double p = 0.13;
  Eigen::Matrix2cd rho = random_ball_state(rng);
  const double r0 = bloch_vector(rho).norm();
  int k = 0;
  for (; k < 4; ++k) {
    const Eigen::Matrix2cd u = haar_random_unitary(rng);
    rho = depolarise((u * rho * u.adjoint()).eval(), p);
  }
  CHECK(bloch_vector(rho).norm() ==
        doctest::Approx(std::pow(1.0 - p, k) * r0).epsilon(1e-12));
}

TEST_CASE("noisy_ensemble_terminal") {
  const auto ideal = exact_three_design();
  const auto clean = noisy_ensemble_terminal(ideal, 0.0);
  for (std::size_t i = 0; i < ideal.members.size(); ++i) {
    const ChiMatrix expected =
        chi_of_unitary(std::get<Eigen::Matrix2cd>(ideal.members[i].channel));
    CHECK(max_abs(std::get<ChiMatrix>(clean.members[i].channel) - expected) <
          1e-10);
  }

  // 1-design epsilon vanishes for any p
  UniformSource rng(4);
  for (double p : {0.2, 0.7, 1.0}) {
    const auto noisy = noisy_ensemble_terminal(ideal, p);
    const Eigen::Matrix2cd rho = random_ball_state(rng);
    CHECK(epsilon_for_state(ensemble_moment(noisy, rho, 1),
                            haar_moment(rho, 1)) <= 1e-9);
  }
}

TEST_CASE("stepwise ensemble at p=0 is the ideal ensemble") {
  const auto angles = exact_three_design_angles();
  const auto noisy = noisy_ensemble_stepwise(angles, 0.0);
  const auto ideal = exact_three_design();
  for (std::size_t i = 0; i < ideal.members.size(); ++i) {
    const ChiMatrix expected =
        chi_of_unitary(std::get<Eigen::Matrix2cd>(ideal.members[i].channel));
    CHECK(max_abs(std::get<ChiMatrix>(noisy.members[i].channel) - expected) <
          1e-9);
  }
}

TEST_CASE("stepwise members equal the covariant closed form") {
  // D_p commutes through unitaries: the member channel is the ideal unitary
  // followed by n = links+1 depolarising steps.
  const auto angles = exact_three_design_angles();
  const double p = 0.08;
  const auto noisy = noisy_ensemble_stepwise(angles, p);
  const double contraction = std::pow(1.0 - p, 6);
  const auto ideal = exact_three_design();
  for (std::size_t i = 0; i < ideal.members.size(); ++i) {
    const ChiMatrix expected = compose_chi(
        depolarising_chi(1.0 - contraction),
        chi_of_unitary(std::get<Eigen::Matrix2cd>(ideal.members[i].channel)));
    CHECK(max_abs(std::get<ChiMatrix>(noisy.members[i].channel) - expected) <
          1e-9);
  }
}

TEST_CASE("stepwise output is more mixed than terminal at equal p") {
  const auto angles = exact_three_design_angles();
  const double p = 0.1;
  const auto stepwise = noisy_ensemble_stepwise(angles, p);
  const auto terminal =
      noisy_ensemble_terminal(exact_three_design(), p);
  const Eigen::Matrix2cd rho = ket_zero() * ket_zero().adjoint();
  const double purity_step =
      bloch_vector(apply_chi(std::get<ChiMatrix>(stepwise.members[0].channel),
                             rho))
          .norm();
  const double purity_term =
      bloch_vector(apply_chi(std::get<ChiMatrix>(terminal.members[0].channel),
                             rho))
          .norm();
  CHECK(purity_step < purity_term);
  CHECK(purity_term == doctest::Approx(1.0 - p).epsilon(1e-9));
}

TEST_CASE("sweep basics") {
  SweepConfig config;
  config.radii = {0.5, 0.75};
  config.p_grid = {0.0, 0.05, 0.1, 0.2, 0.4};

  const auto rows = epsilon_vs_p_sweep(NoiseModel::kStepwise, 2, config);
  REQUIRE(rows.size() == config.radii.size() * config.p_grid.size());

  std::size_t idx = 0;
  for (double radius : config.radii) {
    double last = -1.0;
    for (double p : config.p_grid) {
      const auto& row = rows[idx++];
      CHECK(row.radius == radius);
      CHECK(row.p == p);
      if (p == 0.0) CHECK(row.epsilon <= 1e-9);
      CHECK(row.epsilon >= last - 1e-9);  // non-decreasing in p
      last = row.epsilon;
    }
  }
}

TEST_CASE("t=2 and t=3 sweep curves coincide") {
  SweepConfig config;
  config.radii = {0.68};
  config.p_grid = {0.0, 0.06, 0.15, 0.5};
  const auto rows2 = epsilon_vs_p_sweep(NoiseModel::kStepwise, 2, config);
  const auto rows3 = epsilon_vs_p_sweep(NoiseModel::kStepwise, 3, config);
  REQUIRE(rows2.size() == rows3.size());
  for (std::size_t i = 0; i < rows2.size(); ++i)
    CHECK(std::abs(rows2[i].epsilon - rows3[i].epsilon) < 1e-6);
}

TEST_CASE("stepwise curves plateau before terminal curves") {
  SweepConfig config;
  config.radii = {0.68};
  config.p_grid = {0.15};
  const auto step = epsilon_vs_p_sweep(NoiseModel::kStepwise, 2, config);
  const auto term = epsilon_vs_p_sweep(NoiseModel::kTerminal, 2, config);
  CHECK(step[0].epsilon > term[0].epsilon);
}

TEST_CASE("infer_p_from_test recovers the reference parameters") {
  // 50-point grid keeps the test quick; interpolation does the rest
  SweepConfig config;
  config.p_grid = default_p_grid(51);

  const double p2 = infer_p_from_test(NoiseModel::kStepwise, 2, 0.68, 0.4543,
                                      config);
  CHECK(std::abs(p2 - 0.06) < 0.01);

  const double p3 = infer_p_from_test(NoiseModel::kStepwise, 3, 0.66, 0.4590,
                                      config);
  CHECK(std::abs(p3 - 0.07) < 0.01);

  CHECK(infer_p_from_test(NoiseModel::kStepwise, 2, 0.68, 0.0, config) == 0.0);

  CHECK_THROWS_AS(
      infer_p_from_test(NoiseModel::kTerminal, 1, 0.5, 0.25, config),
      Unreachable);
}

TEST_CASE("calibration_matrix") {
  ConfusionModel clean{{{0.0, 0.0}, {0.0, 0.0}}};
  CHECK(max_abs(calibration_matrix(clean).lambda.cast<Complex>() -
                ComplexMatrix::Identity(4, 4)) == 0.0);

  ConfusionModel single{{{0.02, 0.05}}};
  const auto lambda1 = calibration_matrix(single).lambda;
  CHECK(lambda1(0, 0) == doctest::Approx(0.98));
  CHECK(lambda1(0, 1) == doctest::Approx(0.05));
  CHECK(lambda1(1, 0) == doctest::Approx(0.02));
  CHECK(lambda1(1, 1) == doctest::Approx(0.95));

  ConfusionModel pair{{{0.02, 0.05}, {0.1, 0.2}}};
  const auto lambda2 = calibration_matrix(pair).lambda;
  Eigen::Matrix2d a, b;
  a << 0.98, 0.05, 0.02, 0.95;
  b << 0.9, 0.2, 0.1, 0.8;
  // qubit 1 on the low bits
  const Eigen::MatrixXd expected =
      kron(b.cast<Complex>(), a.cast<Complex>()).real();
  CHECK((lambda2 - expected).cwiseAbs().maxCoeff() < 1e-14);

  for (Eigen::Index c = 0; c < lambda2.cols(); ++c)
    CHECK(lambda2.col(c).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("calibration_from_counts") {
  // noiseless counts give the identity
  std::vector<CountsMap> perfect = {
      {{"00", 8000}}, {{"01", 8000}}, {{"10", 8000}}, {{"11", 8000}}};
  const auto calib = calibration_from_counts(perfect);
  CHECK(calib.n == 2);
  CHECK((calib.lambda - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        0.0);

  for (Eigen::Index c = 0; c < calib.lambda.cols(); ++c)
    CHECK(calib.lambda.col(c).sum() == doctest::Approx(1.0));

  CHECK_THROWS_AS(calibration_from_counts({{{"0", 10}}, {}}), MissingColumn);
  CHECK_THROWS_AS(calibration_from_counts(
                      std::vector<CountsMap>{{{"0", 1}}, {{"1", 1}}, {{"0", 1}}}),
                  MissingColumn);
}

TEST_CASE("calibration_from_counts recovers a known model") {
  ConfusionModel model{{{0.03, 0.08}, {0.05, 0.02}}};
  const auto target = calibration_matrix(model);

  std::vector<CountsMap> counts;
  for (std::uint32_t prepared = 0; prepared < 4; ++prepared) {
    std::map<std::string, double> dist;
    for (std::uint32_t read = 0; read < 4; ++read)
      dist[Outcome{read, 2}.str()] = target.lambda(read, prepared);
    counts.push_back(sample_counts(dist, 8000, 510 + prepared));
  }
  const auto estimated = calibration_from_counts(counts);
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) {
      const double p = target.lambda(r, c);
      const double sigma = std::sqrt(p * (1 - p) / 8000.0);
      CHECK(std::abs(estimated.lambda(r, c) - p) < 3 * sigma + 1e-9);
    }
  }
}

TEST_CASE("apply_readout_noise") {
  const std::map<std::string, double> point{{"000", 1.0}};
  ConfusionModel model{{{0.1, 0.0}, {0.1, 0.0}, {0.1, 0.0}}};
  const auto counts = apply_readout_noise(point, model, 7, 100000);
  const double fraction =
      static_cast<double>(counts.at("000")) / 100000.0;
  CHECK(fraction == doctest::Approx(std::pow(0.9, 3)).epsilon(0.02));

  const auto again = apply_readout_noise(point, model, 7, 100000);
  CHECK(counts == again);

  ConfusionModel clean{{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
  const auto plain = apply_readout_noise(point, clean, 7, 5000);
  CHECK(plain.at("000") == 5000);
}

TEST_CASE("project_to_simplex matches the exhaustive oracle") {
  UniformSource rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.next_raw() % 7);  // up to 8
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = 2.0 * rng.next() - 0.5;
    const Eigen::VectorXd fast = project_to_simplex(v);
    const Eigen::VectorXd brute = brute_force_simplex_projection(v);
    CHECK((fast - brute).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK(fast.minCoeff() >= 0.0);
    CHECK(fast.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("simplex projection satisfies the KKT structure") {
  UniformSource rng(6);
  Eigen::VectorXd v(6);
  for (int i = 0; i < 6; ++i) v(i) = 2.0 * rng.next() - 0.5;
  const Eigen::VectorXd x = project_to_simplex(v);
  double shift = 0.0;
  for (int i = 0; i < 6; ++i) {
    if (x(i) > 1e-12) {
      shift = v(i) - x(i);
      break;
    }
  }
  for (int i = 0; i < 6; ++i) {
    if (x(i) > 1e-12)
      CHECK(v(i) - x(i) == doctest::Approx(shift).epsilon(1e-10));
    else
      CHECK(v(i) <= shift + 1e-10);
  }
}

TEST_CASE("mitigate recovers the true distribution") {
  UniformSource rng(7);
  ConfusionModel model{{{0.03, 0.08}, {0.06, 0.02}, {0.01, 0.05}}};
  const auto calib = calibration_matrix(model);
  const Eigen::Index dim = calib.lambda.rows();

  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd truth(dim);
    for (Eigen::Index i = 0; i < dim; ++i) truth(i) = rng.next();
    truth /= truth.sum();
    const Eigen::VectorXd mitigated = mitigate(calib, calib.lambda * truth);
    CHECK((mitigated - truth).lpNorm<Eigen::Infinity>() < 1e-10);
  }

  // identity calibration leaves physical vectors untouched
  ConfusionModel clean{{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
  Eigen::VectorXd p = Eigen::VectorXd::Zero(8);
  p(3) = 0.25;
  p(5) = 0.75;
  CHECK((mitigate(calibration_matrix(clean), p) - p)
            .lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("mitigate projects unphysical inversions onto the simplex") {
  ConfusionModel model{{{0.1, 0.1}}};
  const auto calib = calibration_matrix(model);
  // a frequency vector outside Lambda's image of the simplex
  Eigen::VectorXd p_exp(2);
  p_exp << 0.02, 0.98;
  const Eigen::VectorXd mitigated = mitigate(calib, p_exp);
  CHECK(mitigated.minCoeff() >= 0.0);
  CHECK(mitigated.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mitigated(1) == doctest::Approx(1.0));
}

TEST_CASE("mitigate rejects a singular calibration") {
  CalibrationMatrix degenerate;
  degenerate.n = 1;
  degenerate.lambda.resize(2, 2);
  degenerate.lambda << 0.5, 0.5, 0.5, 0.5;
  Eigen::VectorXd p(2);
  p << 0.5, 0.5;
  CHECK_THROWS_AS(mitigate(degenerate, p), SingularCalibration);
}

TEST_CASE("least-squares mitigation agrees on well-conditioned data") {
  ConfusionModel model{{{0.04, 0.07}, {0.02, 0.03}}};
  const auto calib = calibration_matrix(model);
  Eigen::VectorXd truth(4);
  truth << 0.4, 0.1, 0.2, 0.3;
  const Eigen::VectorXd observed = calib.lambda * truth;
  const Eigen::VectorXd direct = mitigate(calib, observed);
  const Eigen::VectorXd ls = mitigate_least_squares(calib, observed);
  CHECK((direct - ls).lpNorm<Eigen::Infinity>() < 1e-6);
}
