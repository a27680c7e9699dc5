#include "tdesign/serialize.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace tdesign {

Json json_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double real_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error("unrecognized numeric string: " + s);
  }
  return j.get<double>();
}

Json counts_to_json(const CountsMap& counts, int n,
                    std::span<const double> angles, std::int64_t shots,
                    std::uint64_t seed) {
  Json j;
  j["schema"] = "tdesign.counts/1";
  j["n"] = n;
  j["angles"] = std::vector<double>(angles.begin(), angles.end());
  j["shots"] = shots;
  j["seed"] = seed;
  Json c = Json::object();
  for (const auto& [key, value] : counts) c[key] = value;
  j["counts"] = c;
  return j;
}

CountsMap counts_from_json(const Json& j) {
  CountsMap counts;
  for (const auto& [key, value] : j.at("counts").items())
    counts[key] = value.get<std::int64_t>();
  return counts;
}

Json chi_to_json(const ChiMatrix& chi) {
  Json re = Json::array();
  Json im = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (int c = 0; c < 4; ++c) {
      re_row.push_back(chi(r, c).real());
      im_row.push_back(chi(r, c).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return Json{{"re", re}, {"im", im}, {"basis", "I,X,-iY,Z"}};
}

ChiMatrix chi_from_json(const Json& j) {
  ChiMatrix chi;
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      chi(r, c) = Complex(re.at(r).at(c).get<double>(),
                          im.at(r).at(c).get<double>());
  return chi;
}

Json report_to_json(const TestReport& report, bool include_per_state) {
  Json j;
  j["schema"] = "tdesign.design-test/1";
  j["t"] = report.t;
  j["radius"] = report.radius;
  j["epsilon"] = json_real(report.epsilon);
  j["passing"] = report.passing;
  j["n_states"] = report.n_states;
  if (include_per_state) {
    Json eps = Json::array();
    for (double e : report.per_state_epsilon) eps.push_back(json_real(e));
    j["per_state_epsilon"] = eps;
  }
  return j;
}

Json calibration_to_json(const CalibrationMatrix& calibration) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < calibration.lambda.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < calibration.lambda.cols(); ++c)
      row.push_back(calibration.lambda(r, c));
    rows.push_back(row);
  }
  return Json{{"schema", "tdesign.calibration/1"},
              {"n", calibration.n},
              {"lambda", rows}};
}

CalibrationMatrix calibration_from_json(const Json& j) {
  CalibrationMatrix out;
  out.n = j.at("n").get<int>();
  const Eigen::Index dim = Eigen::Index{1} << out.n;
  out.lambda.resize(dim, dim);
  const auto& rows = j.at("lambda");
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out.lambda(r, c) = rows.at(r).at(c).get<double>();
  return out;
}

Json identity_report_to_json(const IdentityRunReport& report) {
  Json j;
  j["schema"] = "tdesign.identity/1";
  j["n"] = report.n;
  j["p_injected"] = report.p_injected;
  j["inferred_p"] = report.inferred_p;
  j["chi_average"] = chi_to_json(report.chi_average);
  Json fid = Json::object();
  for (const auto& [outcome, f] : report.per_outcome_fidelity)
    fid[outcome] = f;
  j["per_outcome_fidelity"] = fid;
  return j;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "model,t,radius,p,epsilon\n";
  for (const auto& row : rows) {
    out << to_string(row.model) << ',' << row.t << ',' << row.radius << ','
        << row.p << ',';
    if (std::isinf(row.epsilon))
      out << "inf";
    else
      out << row.epsilon;
    out << '\n';
  }
}

}  // namespace tdesign
