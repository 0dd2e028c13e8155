#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kdv/balance_laws.hpp"
#include "kdv/dynamics.hpp"
#include "kdv/profiles.hpp"

namespace kdv {

enum class Command { Simulate, VerifyIdentities, BalanceScan, Fields, Drift };

std::string_view to_string(Command command);
std::optional<Command> command_from_string(std::string_view name);

/// Initial data read from a CSV file with an `eta` column (and optionally `x`).
struct FileProfile {
  std::string path;
  friend bool operator==(const FileProfile&, const FileProfile&) = default;
};

using ProfileSpec = std::variant<SolitaryProfile, GaussianProfile, Sech2Profile, FileProfile>;

/// Fully validated run description. Every field has a value after parsing,
/// so serialize_config() output parses back to an equal RunConfig.
struct RunConfig {
  Command command = Command::VerifyIdentities;
  std::size_t n = 1024;
  double length = 100.0;
  double epsilon = 0.1;
  double dt = 0.005;
  double t_end = 10.0;
  Scheme scheme = Scheme::ETDRK4;
  std::size_t snapshot_stride = 100;
  ProfileSpec profile = SolitaryProfile{};
  std::vector<LawId> laws;
  std::vector<double> eps_list;
  std::vector<double> sample_times;
  std::vector<double> z_levels;
  int nz = 64;
  std::string output_dir = "out";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse the JSON config schema documented in the README. Unknown keys are
/// rejected with their path; syntax errors report line and column. All
/// failures throw ConfigError.
RunConfig parse_config(std::string_view text);

std::string serialize_config(const RunConfig& config);

SolverConfig solver_config(const RunConfig& config);

/// Load the initial data named by the profile spec on the config's grid.
Profile resolve_profile(const RunConfig& config);

}  // namespace kdv
