#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcnav/sim.hpp"

namespace tcnav {

/// Everything a scenario file describes. Obstacles and the workspace live in
/// `scenario.world`; the reference start is `scenario.start`.
struct ScenarioConfig {
  Scenario scenario;
  SimConfig sim;
  std::size_t sweep_count = 20;
  double sweep_clearance = 0.0;  ///< extra clearance over eps for sampled starts
  std::string output_dir;        ///< empty: use the CLI default

  bool operator==(const ScenarioConfig&) const = default;
};

/// Reads the TOML-style scenario format. Sections: [world], repeated
/// [[obstacle]], [planner], [potential_field], [controller], [robot],
/// [disturbance], [sim]. Syntax errors, unknown keys and missing required
/// keys throw kConfig with the line and field path. `base_dir` resolves a
/// `[world] file = "..."` reference.
ScenarioConfig parse_config_unchecked(std::string_view text,
                                      const std::filesystem::path& base_dir = {});

/// Collects every invariant problem (world validity, parameter ranges,
/// start in free space). Empty when the config is usable.
std::vector<std::string> config_problems(const ScenarioConfig& config);

/// parse_config_unchecked followed by config_problems; throws kConfig
/// listing the first problem when any exists.
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

ScenarioConfig load_config(const std::filesystem::path& path);

/// Serializes with 17 significant digits; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

}  // namespace tcnav
