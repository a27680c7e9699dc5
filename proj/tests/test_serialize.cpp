#include <doctest.h>

#include <limits>
#include <sstream>

#include "tdesign/serialize.hpp"

using namespace tdesign;

TEST_CASE("counts json round trip") {
  CountsMap counts{{"00", 120}, {"01", 30}, {"11", 1}};
  const std::vector<double> angles{0.0, 0.5};
  const Json j = counts_to_json(counts, 3, angles, 151, 42);
  CHECK(j.at("schema") == "tdesign.counts/1");
  CHECK(j.at("n") == 3);
  CHECK(j.at("shots") == 151);
  CHECK(j.at("seed") == 42);
  CHECK(counts_from_json(j) == counts);
}

TEST_CASE("chi json round trip") {
  const ChiMatrix chi = chi_of_unitary(hadamard());
  const Json j = chi_to_json(chi);
  CHECK(j.at("basis") == "I,X,-iY,Z");
  CHECK((chi_from_json(j) - chi).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("test report json handles infinity") {
  TestReport report;
  report.t = 2;
  report.radius = 1.0;
  report.epsilon = std::numeric_limits<double>::infinity();
  report.passing = false;
  report.n_states = 10;
  report.per_state_epsilon = {0.1, report.epsilon};

  const Json j = report_to_json(report, true);
  CHECK(j.at("epsilon") == "inf");
  CHECK(real_from_json(j.at("epsilon")) ==
        std::numeric_limits<double>::infinity());
  CHECK(j.at("per_state_epsilon").at(0) == 0.1);
  CHECK(j.at("per_state_epsilon").at(1) == "inf");
}

TEST_CASE("calibration json round trip") {
  ConfusionModel model{{{0.02, 0.05}, {0.01, 0.03}}};
  const auto calib = calibration_matrix(model);
  const auto restored = calibration_from_json(calibration_to_json(calib));
  CHECK(restored.n == calib.n);
  CHECK((restored.lambda - calib.lambda).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("sweep csv format") {
  std::vector<SweepRow> rows = {
      {NoiseModel::kStepwise, 2, 0.68, 0.0, 0.0},
      {NoiseModel::kStepwise, 2, 0.68, 0.06, 0.4507},
      {NoiseModel::kTerminal, 2, 1.0, 0.5,
       std::numeric_limits<double>::infinity()},
  };
  std::ostringstream out;
  write_sweep_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "model,t,radius,p,epsilon");
  std::getline(in, line);
  CHECK(line == "stepwise,2,0.68,0,0");
  std::getline(in, line);
  CHECK(line == "stepwise,2,0.68,0.06,0.4507");
  std::getline(in, line);
  CHECK(line == "terminal,2,1,0.5,inf");
}
