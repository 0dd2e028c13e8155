#include "kdv/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "kdv/csv.hpp"
#include "kdv/error.hpp"
#include "kdv/experiments.hpp"

namespace kdv {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 5> kCommands = {{
    {Command::Simulate, "simulate"},
    {Command::VerifyIdentities, "verify-identities"},
    {Command::BalanceScan, "balance-scan"},
    {Command::Fields, "fields"},
    {Command::Drift, "drift"},
}};

std::string join_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown_keys(const json& object, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(fmt::format("unknown key \"{}\"", join_path(path, key)));
    }
  }
}

const json& require_object(const json& value, const std::string& path) {
  if (!value.is_object()) throw ConfigError(fmt::format("{} must be an object", path));
  return value;
}

double get_number(const json& object, const std::string& parent, const char* key,
                  std::optional<double> fallback = std::nullopt) {
  const std::string path = join_path(parent, key);
  if (!object.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("missing required field {}", path));
  }
  const json& value = object.at(key);
  if (!value.is_number()) throw ConfigError(fmt::format("{} must be a number", path));
  const double out = value.get<double>();
  if (!std::isfinite(out)) throw ConfigError(fmt::format("{} must be finite", path));
  return out;
}

std::size_t get_count(const json& object, const std::string& parent, const char* key,
                      std::optional<std::size_t> fallback = std::nullopt) {
  const std::string path = join_path(parent, key);
  if (!object.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("missing required field {}", path));
  }
  const json& value = object.at(key);
  if (value.is_number_integer() && value.get<long long>() >= 0) return value.get<std::size_t>();
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (v >= 0.0 && std::floor(v) == v) return static_cast<std::size_t>(v);
  }
  throw ConfigError(fmt::format("{} must be a non-negative integer", path));
}

std::vector<double> get_number_list(const json& object, const char* key,
                                    std::vector<double> fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_array()) throw ConfigError(fmt::format("{} must be an array of numbers", key));
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) throw ConfigError(fmt::format("{}[{}] must be a number", key, i));
    out.push_back(value[i].get<double>());
  }
  return out;
}

std::string get_string(const json& object, const std::string& parent, const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
  const std::string path = join_path(parent, key);
  if (!object.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("missing required field {}", path));
  }
  const json& value = object.at(key);
  if (!value.is_string()) throw ConfigError(fmt::format("{} must be a string", path));
  return value.get<std::string>();
}

ProfileSpec parse_profile(const json& node, double length) {
  require_object(node, "profile");
  const std::string type = get_string(node, "profile", "type");
  const double centre = length / 2.0;
  if (type == "solitary") {
    reject_unknown_keys(node, "profile", {"type", "amplitude", "x0"});
    SolitaryProfile p{get_number(node, "profile", "amplitude", 1.0),
                      get_number(node, "profile", "x0", centre)};
    if (!(p.amplitude > 0.0)) throw ConfigError("profile.amplitude must be positive");
    return p;
  }
  if (type == "gaussian") {
    reject_unknown_keys(node, "profile", {"type", "amplitude", "width", "x0"});
    GaussianProfile p{get_number(node, "profile", "amplitude", 0.3),
                      get_number(node, "profile", "width", 5.0),
                      get_number(node, "profile", "x0", centre)};
    if (!(p.width > 0.0)) throw ConfigError("profile.width must be positive");
    return p;
  }
  if (type == "sech2") {
    reject_unknown_keys(node, "profile", {"type", "amplitude", "steepness", "x0"});
    Sech2Profile p{get_number(node, "profile", "amplitude", 0.5),
                   get_number(node, "profile", "steepness", 0.8),
                   get_number(node, "profile", "x0", centre)};
    if (!(p.steepness > 0.0)) throw ConfigError("profile.steepness must be positive");
    return p;
  }
  if (type == "file") {
    reject_unknown_keys(node, "profile", {"type", "path"});
    return FileProfile{get_string(node, "profile", "path")};
  }
  throw ConfigError(fmt::format("profile.type must be solitary, gaussian, sech2 or file, got \"{}\"",
                                type));
}

std::vector<LawId> default_laws(Command command) {
  if (command == Command::BalanceScan) return {LawId::Momentum, LawId::Energy, LawId::EnergyStar};
  return {kAllLaws.begin(), kAllLaws.end()};
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json profile_to_json(const ProfileSpec& spec) {
  struct Visitor {
    json operator()(const SolitaryProfile& p) const {
      return {{"type", "solitary"}, {"amplitude", p.amplitude}, {"x0", p.x0}};
    }
    json operator()(const GaussianProfile& p) const {
      return {{"type", "gaussian"}, {"amplitude", p.amplitude}, {"width", p.width}, {"x0", p.x0}};
    }
    json operator()(const Sech2Profile& p) const {
      return {{"type", "sech2"}, {"amplitude", p.amplitude}, {"steepness", p.steepness}, {"x0", p.x0}};
    }
    json operator()(const FileProfile& p) const { return {{"type", "file"}, {"path", p.path}}; }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "unknown";
}

std::optional<Command> command_from_string(std::string_view name) {
  for (const auto& [c, label] : kCommands) {
    if (label == name) return c;
  }
  return std::nullopt;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    const auto [line, column] = line_and_column(text, err.byte);
    throw ConfigError(fmt::format("syntax error at line {}, column {}: {}", line, column, err.what()));
  }
  require_object(doc, "config document");
  reject_unknown_keys(doc, "", {"command", "grid", "epsilon", "solver", "profile", "laws",
                                "eps_list", "sample_times", "z_levels", "nz", "output_dir"});

  RunConfig config;
  const std::string command = get_string(doc, "", "command");
  const auto parsed_command = command_from_string(command);
  if (!parsed_command) throw ConfigError(fmt::format("unknown command \"{}\"", command));
  config.command = *parsed_command;

  if (!doc.contains("grid")) throw ConfigError("missing required field grid");
  const json& grid = require_object(doc.at("grid"), "grid");
  reject_unknown_keys(grid, "grid", {"n", "length"});
  config.n = get_count(grid, "grid", "n");
  config.length = get_number(grid, "grid", "length");
  try {
    make_grid(config.n, config.length);
  } catch (const ConfigError& err) {
    throw ConfigError(fmt::format("grid: {}", err.what()));
  }

  config.epsilon = get_number(doc, "", "epsilon");
  if (!(config.epsilon > 0.0 && config.epsilon <= 0.5)) {
    throw ConfigError("epsilon out of range (0, 0.5]");
  }

  if (doc.contains("solver")) {
    const json& solver = require_object(doc.at("solver"), "solver");
    reject_unknown_keys(solver, "solver", {"dt", "t_end", "scheme", "snapshot_stride"});
    config.dt = get_number(solver, "solver", "dt", config.dt);
    config.t_end = get_number(solver, "solver", "t_end", config.t_end);
    config.snapshot_stride = get_count(solver, "solver", "snapshot_stride", config.snapshot_stride);
    const std::string scheme = get_string(solver, "solver", "scheme", "ETDRK4");
    if (scheme == "ETDRK4") {
      config.scheme = Scheme::ETDRK4;
    } else if (scheme == "IFRK4") {
      config.scheme = Scheme::IFRK4;
    } else {
      throw ConfigError(fmt::format("solver.scheme must be ETDRK4 or IFRK4, got \"{}\"", scheme));
    }
  }
  if (!(config.dt > 0.0)) throw ConfigError("solver.dt must be positive");
  if (!(config.t_end >= 0.0)) throw ConfigError("solver.t_end must be non-negative");
  if (config.snapshot_stride < 1) throw ConfigError("solver.snapshot_stride must be at least 1");
  try {
    validate(solver_config(config));
  } catch (const ConfigError& err) {
    throw ConfigError(fmt::format("solver.dt: {}", err.what()));
  }

  config.profile = doc.contains("profile") ? parse_profile(doc.at("profile"), config.length)
                                           : ProfileSpec{SolitaryProfile{1.0, config.length / 2.0}};

  if (doc.contains("laws")) {
    const json& laws = doc.at("laws");
    if (!laws.is_array() || laws.empty()) throw ConfigError("laws must be a non-empty array");
    for (std::size_t i = 0; i < laws.size(); ++i) {
      const auto law = laws[i].is_string() ? law_from_string(laws[i].get<std::string>())
                                           : std::nullopt;
      if (!law) throw ConfigError(fmt::format("laws[{}] is not a known balance law", i));
      config.laws.push_back(*law);
    }
  } else {
    config.laws = default_laws(config.command);
  }

  config.eps_list = get_number_list(doc, "eps_list", kDefaultEpsilonLadder);
  if (config.eps_list.empty()) throw ConfigError("eps_list must not be empty");
  for (std::size_t i = 0; i < config.eps_list.size(); ++i) {
    const double e = config.eps_list[i];
    if (!(e > 0.0 && e <= 0.5)) {
      throw ConfigError(fmt::format("eps_list[{}]: epsilon out of range (0, 0.5]", i));
    }
    if (i > 0 && !(e > config.eps_list[i - 1])) {
      throw ConfigError("eps_list must be strictly increasing");
    }
  }

  config.sample_times = get_number_list(doc, "sample_times", {0.0, 5.0, 10.0});
  for (std::size_t i = 0; i < config.sample_times.size(); ++i) {
    if (!(config.sample_times[i] >= 0.0)) {
      throw ConfigError(fmt::format("sample_times[{}] must be non-negative", i));
    }
  }

  config.z_levels = get_number_list(doc, "z_levels", {0.0, 0.5, 1.0});
  for (std::size_t i = 0; i < config.z_levels.size(); ++i) {
    if (!(config.z_levels[i] >= 0.0 && config.z_levels[i] <= 1.3)) {
      throw ConfigError(fmt::format("z_levels[{}] must lie in [0, 1.3]", i));
    }
  }

  config.nz = static_cast<int>(get_count(doc, "", "nz", 64));
  if (config.nz < 32) throw ConfigError("nz must be at least 32");

  config.output_dir = get_string(doc, "", "output_dir", config.output_dir);
  if (config.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  return config;
}

std::string serialize_config(const RunConfig& config) {
  json laws = json::array();
  for (LawId law : config.laws) laws.push_back(std::string(to_string(law)));
  json doc = {
      {"command", std::string(to_string(config.command))},
      {"grid", {{"n", config.n}, {"length", config.length}}},
      {"epsilon", config.epsilon},
      {"solver",
       {{"dt", config.dt},
        {"t_end", config.t_end},
        {"scheme", std::string(to_string(config.scheme))},
        {"snapshot_stride", config.snapshot_stride}}},
      {"profile", profile_to_json(config.profile)},
      {"laws", laws},
      {"eps_list", config.eps_list},
      {"sample_times", config.sample_times},
      {"z_levels", config.z_levels},
      {"nz", config.nz},
      {"output_dir", config.output_dir},
  };
  return doc.dump(2) + "\n";
}

SolverConfig solver_config(const RunConfig& config) {
  return SolverConfig{Params(config.epsilon), make_grid(config.n, config.length), config.dt,
                      config.t_end, config.scheme, config.snapshot_stride};
}

Profile resolve_profile(const RunConfig& config) {
  struct Visitor {
    const RunConfig& config;
    Profile operator()(const SolitaryProfile& p) const { return p; }
    Profile operator()(const GaussianProfile& p) const { return p; }
    Profile operator()(const Sech2Profile& p) const { return p; }
    Profile operator()(const FileProfile& p) const {
      return SampledProfile{read_csv_column(p.path, "eta")};
    }
  };
  return std::visit(Visitor{config}, config.profile);
}

}  // namespace kdv
