#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "kdv/config.hpp"

namespace kdv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

struct RunOptions {
  bool quiet = false;
  unsigned threads = 1;
};

/// Execute one command: writes its CSV tables and manifest.json into
/// config.output_dir and returns 0 (all checks passed), 1 (a check failed)
/// or 2 (configuration or runtime error). The manifest is written in every
/// case where the output directory can be created.
int run(const RunConfig& config, const RunOptions& options, std::ostream& log);

/// Manifest for a run that never got a valid configuration.
void write_error_manifest(const std::filesystem::path& output_dir, const std::string& message);

}  // namespace kdv
