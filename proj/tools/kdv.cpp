// kdv: simulate the KdV equation and check its balance laws.
//
//   kdv <simulate|verify-identities|balance-scan|fields|drift>
//       --config <path> [--output <dir>] [--quiet]
//
// KDV_THREADS sets the worker count for epsilon sweeps (default 1).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdv/config.hpp"
#include "kdv/error.hpp"
#include "kdv/experiments.hpp"
#include "kdv/run.hpp"

namespace {

struct Arguments {
  std::string config_path;
  std::string output_dir;
  bool quiet = false;
};

// The subcommand fills in a missing "command" key and must agree with a
// present one; --output overrides output_dir.
std::string merge_cli_into_config(const std::string& text, const std::string& command,
                                  const std::string& output_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    return text;  // parse_config reports the syntax error with its position
  }
  if (!doc.is_object()) return text;
  if (!doc.contains("command")) {
    doc["command"] = command;
  } else if (doc["command"] != command) {
    throw kdv::ConfigError("config command \"" + doc["command"].dump() +
                           "\" does not match subcommand \"" + command + "\"");
  }
  if (!output_dir.empty()) doc["output_dir"] = output_dir;
  return doc.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral KdV solver and balance-law verification"};
  app.require_subcommand(1);
  Arguments args;
  for (const char* name : {"simulate", "verify-identities", "balance-scan", "fields", "drift"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config_path, "JSON run configuration")->required();
    sub->add_option("--output", args.output_dir, "output directory (overrides output_dir)");
    sub->add_flag("--quiet", args.quiet, "suppress progress output");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kdv::kExitError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  kdv::RunConfig config;
  try {
    std::ifstream in(args.config_path);
    if (!in) throw kdv::ConfigError("cannot read config file " + args.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = kdv::parse_config(merge_cli_into_config(buffer.str(), command, args.output_dir));
  } catch (const std::exception& err) {
    std::cerr << "config error: " << err.what() << '\n';
    if (!args.output_dir.empty()) {
      try {
        kdv::write_error_manifest(args.output_dir, err.what());
      } catch (const std::exception&) {
      }
    }
    return kdv::kExitError;
  }

  kdv::RunOptions options;
  options.quiet = args.quiet;
  options.threads = kdv::threads_from_environment();
  return kdv::run(config, options, std::cout);
}
