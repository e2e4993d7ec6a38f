#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "sysid/bounds.hpp"
#include "sysid/complexity_config.hpp"
#include "sysid/experiment.hpp"
#include "sysid/index_family.hpp"
#include "sysid/linear_system.hpp"
#include "sysid/noise.hpp"
#include "sysid/pac.hpp"
#include "sysid/selection.hpp"

namespace sysid {

using nlohmann::json;

// Matrices are arrays of row arrays, vectors flat arrays. Family sets are
// keyed by the string form of m: {"k": 1, "p": 3, "sets": {"1": [2, 3]}}.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& label);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j, const std::string& label);

json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const json& j, const std::string& label);

json to_json(const NoiseModel& noise);
NoiseModel noise_model_from_json(const json& j);

json to_json(const LinearSystem& system);
LinearSystem linear_system_from_json(const json& j);

json to_json(const IndexFamily& family);
IndexFamily index_family_from_json(const json& j);

json to_json(const ComplexityConfig& config);
ComplexityConfig complexity_config_from_json(const json& j);

json to_json(const SpectralBounds& bounds);
SpectralBounds spectral_bounds_from_json(const json& j);

json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const json& j);

json to_json(const PacRequest& request);
PacRequest pac_request_from_json(const json& j);

json to_json(const PacLimits& limits);
PacLimits pac_limits_from_json(const json& j);

// Output-only serializations.
json to_json(const ConditionTerm& term);
json to_json(const ConditionReport& report);
json to_json(const SelectionResult& result);
json to_json(const PacIteration& step);
json to_json(const PacOutcome& outcome);
json to_json(const PacDemoResult& result);
json to_json(const SweepPoint& point);
json to_json(const std::vector<SweepPoint>& rows);

// Parse errors and I/O failures surface as ConfigError naming the path.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace sysid
