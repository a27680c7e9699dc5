// Command-line front end: runs design tests, noise sweeps, channel
// tomography, identity benchmarks, readout-error mitigation and
// relative-frequency experiments, emitting JSON/CSV results.

#include <CLI11.hpp>
#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tdesign/identity_bench.hpp"
#include "tdesign/serialize.hpp"

namespace {

using namespace tdesign;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << body;
  if (body.empty() || body.back() != '\n') out << "\n";
}

void write_json(const std::string& path, const Json& j) {
  write_output(path, j.dump(2));
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file: " + path);
  Json j;
  in >> j;
  return j;
}

std::vector<double> parse_angles(const std::string& spec) {
  std::vector<double> angles;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "pi/4")
      angles.push_back(std::numbers::pi / 4);
    else if (token == "acos3")
      angles.push_back(std::acos(std::sqrt(1.0 / 3.0)));
    else
      angles.push_back(std::stod(token));
  }
  return angles;
}

std::vector<double> ensemble_angles(const std::string& name,
                                    const std::string& angle_spec) {
  if (!angle_spec.empty()) return parse_angles(angle_spec);
  if (name == "exact3") return exact_three_design_angles();
  if (name == "approx2") return approx_two_design_angles();
  throw ConfigError("unknown ensemble: " + name +
                    " (use exact3, approx2 or --angles)");
}

std::vector<QubitFlips> parse_flip_list(const std::string& spec) {
  std::vector<QubitFlips> pairs;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
      throw ConfigError("confusion entries look like p01:p10");
    pairs.push_back({std::stod(token.substr(0, colon)),
                     std::stod(token.substr(colon + 1))});
  }
  return pairs;
}

// Flips for the measured chain qubits 1..qubits: a single pair broadcasts;
// a full-chain list (qubits+1 entries) drops the output qubit.
ConfusionModel parse_confusion(const std::string& spec, int qubits) {
  auto pairs = parse_flip_list(spec);
  if (pairs.size() == 1) pairs.assign(qubits, pairs.front());
  if (static_cast<int>(pairs.size()) == qubits + 1) pairs.pop_back();
  if (static_cast<int>(pairs.size()) != qubits)
    throw ConfigError("confusion model needs 1 or " + std::to_string(qubits) +
                      " qubit entries");
  return {pairs};
}

// Flips for the tomography measurement on the output qubit: the last entry.
std::optional<QubitFlips> output_qubit_flips(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  return parse_flip_list(spec).back();
}

Eigen::Vector2cd parse_probe(const std::string& name) {
  if (name == "0") return ket_zero();
  if (name == "1") return ket_one();
  if (name == "+") return ket_plus();
  if (name == "+y") return ket_plus_y();
  throw ConfigError("unknown input state: " + name);
}

// Counts of measuring `rho` in one tomography basis, optionally through a
// single-qubit confusion model with optional mitigation.
CountsMap tomography_basis_counts(const Eigen::Matrix2cd& rho, char basis,
                                  std::int64_t shots, std::uint64_t seed,
                                  const std::optional<QubitFlips>& confusion,
                                  bool mitigate_counts) {
  Eigen::Matrix2cd rotated = rho;
  if (basis == 'X') rotated = hadamard() * rho * hadamard();
  if (basis == 'Y') {
    Eigen::Matrix2cd sdg = Eigen::Matrix2cd::Identity();
    sdg(1, 1) = Complex(0, -1);
    const Eigen::Matrix2cd g = hadamard() * sdg;
    rotated = g * rho * g.adjoint();
  }
  const double p0 = std::clamp(rotated(0, 0).real(), 0.0, 1.0);
  std::map<std::string, double> dist{{"0", p0}, {"1", 1.0 - p0}};

  if (!confusion) return sample_counts(dist, shots, seed);

  ConfusionModel model{{*confusion}};
  CountsMap counts = apply_readout_noise(dist, model, seed, shots);
  if (!mitigate_counts) return counts;

  Eigen::Vector2d freq = Eigen::Vector2d::Zero();
  for (const auto& [key, c] : counts)
    freq(key == "0" ? 0 : 1) = static_cast<double>(c) / shots;
  const Eigen::VectorXd fixed = mitigate(calibration_matrix(model), freq);
  // back to integer counts at the same total
  CountsMap out;
  out["0"] = std::llround(fixed(0) * static_cast<double>(shots));
  out["1"] = shots - out["0"];
  return out;
}

struct TomographyRun {
  std::vector<std::string> outcomes;
  std::vector<ChiMatrix> chis;
  std::vector<double> fidelities;  // vs the ideal unitaries
  std::vector<double> frequencies;
  double mean_fidelity = 0.0;
};

// Per-outcome channel tomography for a chain ensemble: exact or sampled
// (12 circuits per outcome), optional depolarising noise on the channel and
// confusion noise on the tomography measurements.
TomographyRun run_channel_tomography(const std::vector<double>& angles,
                                     const std::string& noise, double p,
                                     std::optional<std::int64_t> shots,
                                     std::uint64_t seed,
                                     const std::optional<QubitFlips>& confusion,
                                     bool mitigate_counts) {
  const auto ideal = ensemble_from_angles(angles);
  UnitaryEnsemble channels = ideal;
  if (noise == "terminal")
    channels = noisy_ensemble_terminal(ideal, p);
  else if (noise == "stepwise")
    channels = noisy_ensemble_stepwise(angles, p);
  else if (noise != "none")
    throw ConfigError("unknown noise model: " + noise);

  const std::array<Eigen::Vector2cd, 4> probes{ket_zero(), ket_one(),
                                               ket_plus(), ket_plus_y()};
  TomographyRun run;
  for (std::size_t i = 0; i < channels.members.size(); ++i) {
    const auto& member = channels.members[i];
    std::array<Eigen::Matrix2cd, 4> outputs;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      Eigen::Matrix2cd rho;
      if (member.is_unitary()) {
        const auto& u = std::get<Eigen::Matrix2cd>(member.channel);
        rho = u * (probes[k] * probes[k].adjoint()) * u.adjoint();
      } else {
        rho = apply_chi(std::get<ChiMatrix>(member.channel),
                        probes[k] * probes[k].adjoint());
      }
      if (!shots) {
        const auto r = bloch_vector(rho);
        outputs[k] = state_from_expectations(r(0), r(1), r(2));
      } else {
        outputs[k] = state_tomography(
            tomography_basis_counts(rho, 'X', *shots, seed, confusion,
                                    mitigate_counts),
            tomography_basis_counts(rho, 'Y', *shots, seed + 1, confusion,
                                    mitigate_counts),
            tomography_basis_counts(rho, 'Z', *shots, seed + 2, confusion,
                                    mitigate_counts));
        seed += 3;
      }
    }
    const ChiMatrix chi = chi_from_probe_outputs(outputs[0], outputs[1],
                                                 outputs[2], outputs[3]);
    const ChiMatrix chi_ideal =
        chi_of_unitary(std::get<Eigen::Matrix2cd>(ideal.members[i].channel));
    run.outcomes.push_back(member.outcome.str());
    run.chis.push_back(chi);
    run.fidelities.push_back(channel_fidelity(chi_ideal, chi));
    run.frequencies.push_back(member.probability);
  }
  double total = 0.0;
  for (double f : run.fidelities) total += f;
  run.mean_fidelity = total / static_cast<double>(run.fidelities.size());
  return run;
}

// Relative frequencies of the chain outcomes: exact, or sampled with
// optional confusion noise on the measured qubits and optional mitigation.
std::vector<double> outcome_frequencies(const std::vector<double>& angles,
                                        const Eigen::Vector2cd& input,
                                        std::optional<std::int64_t> shots,
                                        std::uint64_t seed,
                                        const std::string& confusion_spec,
                                        bool mitigate_counts,
                                        CountsMap* counts_out = nullptr) {
  const int n = static_cast<int>(angles.size()) + 1;
  const auto branches = measure_chain(build_linear_cluster(n, input), angles);
  std::vector<double> freq(branches.size());
  if (!shots) {
    for (std::size_t i = 0; i < branches.size(); ++i)
      freq[i] = branches[i].probability;
    return freq;
  }

  CountsMap counts;
  std::optional<CalibrationMatrix> calib;
  if (confusion_spec.empty()) {
    counts = sample_counts(branches, *shots, seed);
  } else {
    const auto model = parse_confusion(confusion_spec, n - 1);
    calib = calibration_matrix(model);
    std::map<std::string, double> dist;
    for (const auto& br : branches) dist[br.outcome.str()] = br.probability;
    counts = apply_readout_noise(dist, model, seed, *shots);
  }
  if (counts_out) *counts_out = counts;

  Eigen::VectorXd observed = Eigen::VectorXd::Zero(branches.size());
  for (const auto& [key, c] : counts)
    observed(Outcome::from_string(key).bits) =
        static_cast<double>(c) / static_cast<double>(*shots);

  if (mitigate_counts && calib) {
    const Eigen::VectorXd fixed = mitigate(*calib, observed);
    for (std::size_t i = 0; i < freq.size(); ++i) freq[i] = fixed(i);
  } else {
    for (std::size_t i = 0; i < freq.size(); ++i) freq[i] = observed(i);
  }
  return freq;
}

int cmd_design_test(const std::string& ensemble_name,
                    const std::string& angle_spec, int t, double radius,
                    bool search_radius, bool fraction,
                    const std::string& noise, double p,
                    std::optional<std::int64_t> shots, std::uint64_t seed,
                    const std::string& confusion_spec, bool mitigate_counts,
                    bool uniform, bool per_state, const std::string& output) {
  if (radius <= 0.0 || radius > 1.0)
    throw ConfigError("radius must lie in (0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  const auto angles = ensemble_angles(ensemble_name, angle_spec);

  UnitaryEnsemble ensemble;
  if (shots) {
    auto tomo = run_channel_tomography(angles, noise, p, shots, seed,
                                       output_qubit_flips(confusion_spec),
                                       mitigate_counts);
    const auto freqs =
        outcome_frequencies(angles, ket_plus(), shots, seed + 7777,
                            confusion_spec, mitigate_counts);
    for (std::size_t i = 0; i < tomo.chis.size(); ++i) {
      EnsembleMember member;
      member.outcome = Outcome::from_string(tomo.outcomes[i]);
      member.probability =
          uniform ? 1.0 / static_cast<double>(tomo.chis.size()) : freqs[i];
      member.channel = tomo.chis[i];
      ensemble.members.push_back(std::move(member));
    }
  } else if (noise == "terminal") {
    ensemble = noisy_ensemble_terminal(ensemble_from_angles(angles), p);
  } else if (noise == "stepwise") {
    ensemble = noisy_ensemble_stepwise(angles, p);
  } else if (noise == "none") {
    ensemble = ensemble_from_angles(angles);
  } else {
    throw ConfigError("unknown noise model: " + noise);
  }

  Json j;
  j["schema"] = "tdesign.design-test/1";
  j["config"] = {{"ensemble", ensemble_name}, {"angles", angles},
                 {"t", t},                    {"radius", radius},
                 {"noise", noise},            {"p", p},
                 {"uniform", uniform},        {"seed", seed},
                 {"shots", shots ? Json(*shots) : Json(nullptr)},
                 {"mitigate", mitigate_counts}};

  if (search_radius) {
    const auto result = truncation_radius_search(ensemble, t);
    j["search"] = {{"radius", result.radius},
                   {"epsilon", json_real(result.epsilon)}};
  } else {
    const auto report =
        design_test(ensemble, t, bloch_sample_spherical(radius), radius);
    const Json report_json = report_to_json(report, per_state);
    for (const auto& [key, value] : report_json.items())
      if (key != "schema") j[key] = value;
  }
  if (fraction) j["passing_fraction"] = passing_fraction(ensemble, t);

  write_json(output, j);
  return 0;
}

int cmd_sweep(const std::string& model_name, int t,
              const std::string& radii_spec, int p_points,
              const std::string& angle_spec, const std::string& output) {
  NoiseModel model = NoiseModel::kStepwise;
  if (model_name == "terminal")
    model = NoiseModel::kTerminal;
  else if (model_name != "stepwise")
    throw ConfigError("unknown model: " + model_name);

  SweepConfig config;
  if (!radii_spec.empty()) config.radii = parse_angles(radii_spec);
  if (p_points > 1) config.p_grid = default_p_grid(p_points);
  if (!angle_spec.empty()) config.angles = parse_angles(angle_spec);

  const auto rows = epsilon_vs_p_sweep(model, t, config);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_output(output, csv.str());
  return 0;
}

int cmd_tomography(const std::string& ensemble_name,
                   const std::string& angle_spec, const std::string& noise,
                   double p, std::optional<std::int64_t> shots,
                   std::uint64_t seed, const std::string& confusion_spec,
                   bool mitigate_counts, const std::string& output) {
  const auto angles = ensemble_angles(ensemble_name, angle_spec);
  const auto run = run_channel_tomography(angles, noise, p, shots, seed,
                                          output_qubit_flips(confusion_spec),
                                          mitigate_counts);

  Json channels = Json::array();
  for (std::size_t i = 0; i < run.chis.size(); ++i) {
    channels.push_back({{"outcome", run.outcomes[i]},
                        {"chi", chi_to_json(run.chis[i])},
                        {"fidelity", run.fidelities[i]}});
  }
  Json j;
  j["schema"] = "tdesign.tomography/1";
  j["config"] = {{"ensemble", ensemble_name},
                 {"angles", angles},
                 {"noise", noise},
                 {"p", p},
                 {"shots", shots ? Json(*shots) : Json(nullptr)},
                 {"seed", seed},
                 {"confusion", confusion_spec},
                 {"mitigate", mitigate_counts}};
  j["channels"] = channels;
  j["mean_fidelity"] = run.mean_fidelity;
  write_json(output, j);
  return 0;
}

int cmd_identity(int n, double p, std::optional<std::int64_t> shots,
                 std::uint64_t seed, bool uniform_average,
                 const std::string& output) {
  if (n < 3 || n % 2 == 0)
    throw ConfigError("identity chains need odd n >= 3, got " +
                      std::to_string(n));
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  IdentityBenchOptions options;
  options.shots = shots;
  options.seed = seed;
  options.uniform_average = uniform_average;
  const auto report = identity_bench(n, p, options);

  Json j = identity_report_to_json(report);
  j["config"] = {{"n", n},
                 {"p", p},
                 {"shots", shots ? Json(*shots) : Json(nullptr)},
                 {"seed", seed},
                 {"uniform_average", uniform_average}};
  write_json(output, j);
  return 0;
}

int cmd_mitigate(const std::string& calibration_path,
                 const std::string& counts_path, bool least_squares,
                 const std::string& output) {
  const auto calib = calibration_from_json(load_json(calibration_path));
  const Json counts_json = load_json(counts_path);
  const CountsMap counts = counts_from_json(counts_json);

  std::int64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  if (total <= 0) throw ConfigError("counts file is empty");

  Eigen::VectorXd observed = Eigen::VectorXd::Zero(calib.lambda.rows());
  for (const auto& [key, c] : counts) {
    const auto outcome = Outcome::from_string(key);
    if (outcome.length != calib.n)
      throw ConfigError("counts bitstrings do not match the calibration size");
    observed(outcome.bits) = static_cast<double>(c) / total;
  }

  const Eigen::VectorXd fixed = least_squares
                                    ? mitigate_least_squares(calib, observed)
                                    : mitigate(calib, observed);
  Json probabilities = Json::object();
  for (Eigen::Index i = 0; i < fixed.size(); ++i) {
    const Outcome o{static_cast<std::uint32_t>(i), calib.n};
    if (fixed(i) > 0) probabilities[o.str()] = fixed(i);
  }
  Json j;
  j["schema"] = "tdesign.mitigated/1";
  j["config"] = {{"calibration", calibration_path},
                 {"counts", counts_path},
                 {"least_squares", least_squares}};
  j["total"] = total;
  j["probabilities"] = probabilities;
  write_json(output, j);
  return 0;
}

int cmd_frequencies(const std::string& ensemble_name,
                    const std::string& angle_spec, const std::string& input,
                    std::optional<std::int64_t> shots, std::uint64_t seed,
                    const std::string& confusion_spec, bool mitigate_counts,
                    const std::string& output) {
  const auto angles = ensemble_angles(ensemble_name, angle_spec);
  const int n = static_cast<int>(angles.size()) + 1;

  CountsMap counts;
  const auto freqs =
      outcome_frequencies(angles, parse_probe(input), shots, seed,
                          confusion_spec, mitigate_counts, &counts);

  Json frequencies = Json::object();
  double mean = 0.0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const Outcome o{static_cast<std::uint32_t>(i),
                    static_cast<int>(angles.size())};
    frequencies[o.str()] = freqs[i];
    mean += freqs[i];
  }
  mean /= static_cast<double>(freqs.size());

  Json j = counts_to_json(counts, n, angles, shots ? *shots : 0, seed);
  j["schema"] = "tdesign.frequencies/1";
  j["config"] = {{"ensemble", ensemble_name},
                 {"input", input},
                 {"confusion", confusion_spec},
                 {"mitigate", mitigate_counts}};
  j["frequencies"] = frequencies;
  j["mean_frequency"] = mean;
  j["expected_uniform"] = 1.0 / static_cast<double>(freqs.size());
  write_json(output, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-based single-qubit t-design simulator"};
  app.require_subcommand(1);

  std::string ensemble = "exact3";
  std::string angle_spec;
  std::string noise = "none";
  std::string confusion;
  std::string output;
  std::string input = "+";
  std::string model = "stepwise";
  std::string radii_spec;
  std::string calibration_path;
  std::string counts_path;
  int t = 2;
  int n = 3;
  int p_points = 0;
  double radius = 1.0;
  double p = 0.0;
  std::int64_t shots_value = 0;
  std::uint64_t seed = 1;
  bool search_radius = false;
  bool fraction = false;
  bool uniform = false;
  bool per_state = false;
  bool mitigate_counts = false;
  bool uniform_average = false;
  bool least_squares = false;

  auto add_common = [&](CLI::App* cmd, bool with_shots = true) {
    cmd->add_option("--output", output, "output file (stdout when omitted)");
    if (with_shots) {
      cmd->add_option("--shots", shots_value,
                      "sample with this many shots instead of exact values");
      cmd->add_option("--seed", seed, "RNG seed");
    }
  };

  auto* dt = app.add_subcommand("design-test", "run the epsilon test");
  dt->add_option("--ensemble", ensemble, "exact3 or approx2");
  dt->add_option("--angles", angle_spec, "comma-separated link angles");
  dt->add_option("--t", t, "design order (1, 2 or 3)")->check(CLI::Range(1, 3));
  dt->add_option("--radius", radius, "truncation radius in (0, 1]");
  dt->add_flag("--search-radius", search_radius,
               "search the largest passing radius");
  dt->add_flag("--fraction", fraction, "also compute the passing fraction");
  dt->add_option("--noise", noise, "none, terminal or stepwise");
  dt->add_option("--p", p, "depolarising parameter");
  dt->add_option("--confusion", confusion,
                 "p01:p10 pair, or one per chain qubit (last = output)");
  dt->add_flag("--mitigate", mitigate_counts, "mitigate readout errors");
  dt->add_flag("--uniform", uniform,
               "use uniform probabilities instead of sampled frequencies");
  dt->add_flag("--per-state", per_state, "include per-state epsilons");
  add_common(dt);

  auto* sw = app.add_subcommand("sweep", "epsilon versus p curves (CSV)");
  sw->add_option("--model", model, "terminal or stepwise");
  sw->add_option("--t", t, "design order")->check(CLI::Range(1, 3));
  sw->add_option("--radii", radii_spec, "comma-separated truncation radii");
  sw->add_option("--p-points", p_points, "p grid resolution (default 200)");
  sw->add_option("--angles", angle_spec, "chain angles (default exact3)");
  add_common(sw, false);

  auto* tm = app.add_subcommand("tomography",
                                "per-outcome channel tomography + fidelities");
  tm->add_option("--ensemble", ensemble, "exact3 or approx2");
  tm->add_option("--angles", angle_spec, "comma-separated link angles");
  tm->add_option("--noise", noise, "none, terminal or stepwise");
  tm->add_option("--p", p, "depolarising parameter");
  tm->add_option("--confusion", confusion, "output-qubit p01:p10");
  tm->add_flag("--mitigate", mitigate_counts, "mitigate readout errors");
  add_common(tm);

  auto* id = app.add_subcommand("identity", "odd-chain identity benchmark");
  id->add_option("--n", n, "chain length (odd)");
  id->add_option("--p", p, "per-step depolarising parameter");
  id->add_flag("--uniform-average", uniform_average,
               "average chi uniformly over outcomes");
  add_common(id);

  auto* mt = app.add_subcommand("mitigate", "apply readout-error mitigation");
  mt->add_option("--calibration", calibration_path, "calibration JSON")
      ->required();
  mt->add_option("--counts", counts_path, "counts JSON")->required();
  mt->add_flag("--least-squares", least_squares,
               "constrained least squares instead of invert-and-project");
  add_common(mt, false);

  auto* fr = app.add_subcommand("frequencies",
                                "relative frequencies of chain outcomes");
  fr->add_option("--ensemble", ensemble, "exact3 or approx2");
  fr->add_option("--angles", angle_spec, "comma-separated link angles");
  fr->add_option("--input", input, "input state: 0, 1, + or +y");
  fr->add_option("--confusion", confusion, "per-measured-qubit p01:p10 list");
  fr->add_flag("--mitigate", mitigate_counts, "mitigate readout errors");
  add_common(fr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::optional<std::int64_t> shots =
      shots_value > 0 ? std::optional<std::int64_t>(shots_value)
                      : std::nullopt;

  try {
    if (dt->parsed())
      return cmd_design_test(ensemble, angle_spec, t, radius, search_radius,
                             fraction, noise, p, shots, seed, confusion,
                             mitigate_counts, uniform, per_state, output);
    if (sw->parsed())
      return cmd_sweep(model, t, radii_spec, p_points, angle_spec, output);
    if (tm->parsed())
      return cmd_tomography(ensemble, angle_spec, noise, p, shots, seed,
                            confusion, mitigate_counts, output);
    if (id->parsed())
      return cmd_identity(n, p, shots, seed, uniform_average, output);
    if (mt->parsed())
      return cmd_mitigate(calibration_path, counts_path, least_squares,
                          output);
    if (fr->parsed())
      return cmd_frequencies(ensemble, angle_spec, input, shots, seed,
                             confusion, mitigate_counts, output);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
