#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdesign/design.hpp"
#include "tdesign/identity_bench.hpp"
#include "tdesign/noise.hpp"

namespace tdesign {

using Json = nlohmann::json;

// Counts file: {"schema", "n", "angles", "shots", "seed", "counts": {bits: N}}
Json counts_to_json(const CountsMap& counts, int n,
                    std::span<const double> angles, std::int64_t shots,
                    std::uint64_t seed);
CountsMap counts_from_json(const Json& j);

// {"re": 4x4, "im": 4x4, "basis": "I,X,-iY,Z"}
Json chi_to_json(const ChiMatrix& chi);
ChiMatrix chi_from_json(const Json& j);

// {"t", "radius", "epsilon", "passing", "n_states", "per_state_epsilon"?};
// infinite epsilon serializes as the string "inf".
Json report_to_json(const TestReport& report, bool include_per_state = false);

// {"n", "lambda": row-major 2^n x 2^n}
Json calibration_to_json(const CalibrationMatrix& calibration);
CalibrationMatrix calibration_from_json(const Json& j);

Json identity_report_to_json(const IdentityRunReport& report);

// Header `model,t,radius,p,epsilon`, rows in input order.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

Json json_real(double value);         // inf-safe encoding
double real_from_json(const Json& j);

}  // namespace tdesign
