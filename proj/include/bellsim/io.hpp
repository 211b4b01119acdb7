#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bellsim/hidden_variables.hpp"
#include "bellsim/macrostate.hpp"
#include "bellsim/povm.hpp"

// Versioned JSON schemas and CSV emission. Formats are documented in
// docs/formats.md; numbers are printed with 12 significant digits, '.'
// decimal separator, no locale.

namespace bellsim::io {

using nlohmann::json;

std::string format_number(double v);  // %.12g

// --- JSON -----------------------------------------------------------------

json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);  // matrix object or Bell-state name

json quartet_to_json(const ExperimentQuartet& q);
ExperimentQuartet quartet_from_json(const json& j);

json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const json& j);

struct HvRunSpec {
    QuasiObjectivisticModel model;
    QuartetSettings settings;
};
json hv_spec_to_json(const HvRunSpec& spec);
HvRunSpec hv_spec_from_json(const json& j);

json macro_model_to_json(const MacrostateModel& model);
MacrostateModel macro_model_from_json(const json& j);

json quad_to_json(const QuadrivariateDistribution& quad);

json settings_to_json(const QuartetSettings& s);
QuartetSettings settings_from_json(const json& j);

// Parses a whole file; wraps parse errors in std::invalid_argument.
json load_json_file(const std::string& path);

// --- CSV ------------------------------------------------------------------

// "# key: value" comment header; every output file starts with one.
void write_metadata(std::ostream& os, const std::string& subcommand, std::uint64_t seed,
                    const std::vector<std::pair<std::string, std::string>>& params);

void write_quad_csv(std::ostream& os, const QuadrivariateDistribution& quad);
void write_quartet_csv(std::ostream& os, const ExperimentQuartet& quartet);

}  // namespace bellsim::io
