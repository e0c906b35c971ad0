#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermient/errors.hpp"

namespace fermient {

/// Fully resolved scenario configuration. Enum-like fields stay as their
/// canonical text spelling; the scenario runner converts them.
struct ScenarioConfig {
  std::string scenario;              // dimer-curve | eks-thermal | free-thermal
                                     // | spectrum | car-check | rho-site
  std::string model = "free";       // free | hubbard | eks
  int sites = 0;
  double t = 1.0;
  double u = 0.0;
  double mu = 0.0;
  std::string boundary;              // open | periodic
  std::vector<double> betas;
  std::string decomposition = "real";  // real | reciprocal | unitary:FILE
  std::string entropy;               // vn | linear
  int points = 201;
  double u_over_4t_min = 0.0;
  double u_over_4t_max = 10.0;
  std::string format = "csv";        // csv | json
  std::string out;                   // empty: stdout
  int site = 0;
};

/// Partial override set; CLI flags win over config-file keys.
struct ConfigOverrides {
  std::optional<std::string> scenario, model, boundary, decomposition, entropy,
      format, out;
  std::optional<int> sites, points, site;
  std::optional<double> t, u, mu, u_over_4t_min, u_over_4t_max;
  std::optional<std::vector<double>> betas;
};

/// Parse key-value config text ('#' comments, key = value lines), overlay the
/// overrides, fill documented defaults and validate. Unknown keys, type
/// mismatches and out-of-range values raise ConfigError with line and field.
/// Duplicate beta values are deduplicated with a warning.
ScenarioConfig parse_config(std::string_view text,
                            const ConfigOverrides& overrides = {},
                            std::vector<std::string>* warnings = nullptr);

/// Canonical key-value rendering of the effective config; feeding it back to
/// parse_config reproduces the same configuration byte for byte.
std::string emit_config(const ScenarioConfig& config);

/// %.17g rendering used for all numeric output (round-trip exact doubles).
std::string format_double(double value);

std::vector<double> parse_double_list(std::string_view text);

}  // namespace fermient
