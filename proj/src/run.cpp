#include "kdv/run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <exception>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "kdv/csv.hpp"
#include "kdv/error.hpp"
#include "kdv/experiments.hpp"
#include "kdv/flow_fields.hpp"
#include "kdv/spectral.hpp"
#include "kdv/thresholds.hpp"
#include "kdv/version.hpp"

namespace kdv {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;

  bool passed() const {
    if (!std::isfinite(value)) return false;
    return (!lower || value >= *lower) && (!upper || value <= *upper);
  }
};

// Accumulates everything the manifest reports about one run.
class RunContext {
 public:
  RunContext(const RunConfig& config, const RunOptions& options, std::ostream& log)
      : config(config), options(options), log_(log), dir_(config.output_dir) {}

  void write_table(const std::string& name, const CsvTable& table) {
    table.write(dir_ / name);
    tables_.push_back(name);
    say(fmt::format("wrote {} ({} rows)", (dir_ / name).string(), table.size()));
  }

  void add_check(Check check) {
    say(fmt::format("{:<48} {:>12.4e}  {}", check.name, check.value,
                    check.passed() ? "pass" : "FAIL"));
    checks_.push_back(std::move(check));
  }

  void say(const std::string& line) {
    if (!options.quiet) log_ << line << '\n';
  }

  bool all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed(); });
  }

  json manifest(const std::string& status, int exit_code,
                const std::optional<std::string>& error) const {
    json checks = json::array();
    for (const Check& c : checks_) {
      checks.push_back({{"name", c.name},
                        {"value", c.value},
                        {"lower", c.lower ? json(*c.lower) : json(nullptr)},
                        {"upper", c.upper ? json(*c.upper) : json(nullptr)},
                        {"passed", c.passed()}});
    }
    json doc = {{"tool", "kdv"},
                {"version", kVersion},
                {"thresholds_version", thresholds::kThresholdsVersion},
                {"command", std::string(to_string(config.command))},
                {"config", json::parse(serialize_config(config))},
                {"initial_data", initial_data},
                {"results", results},
                {"checks", checks},
                {"tables", tables_},
                {"status", status},
                {"exit_code", exit_code}};
    if (error) doc["error"] = *error;
    return doc;
  }

  const RunConfig& config;
  const RunOptions& options;
  json initial_data = json::object();
  json results = json::object();

 private:
  std::ostream& log_;
  fs::path dir_;
  std::vector<std::string> tables_;
  std::vector<Check> checks_;
};

json fit_to_json(const std::optional<LogLogFit>& fit) {
  if (!fit) return nullptr;
  return {{"slope", fit->slope}, {"intercept", fit->intercept}, {"r2", fit->r2}};
}

void run_simulate(RunContext& ctx, const Field& eta0) {
  const Trajectory traj = simulate(eta0, solver_config(ctx.config));
  CsvTable table({"t", "x", "eta"});
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const Field& state = traj.states[s];
    for (std::size_t j = 0; j < state.size(); ++j) {
      table.row() << traj.times[s] << state.grid().point(j) << state[j];
    }
  }
  ctx.write_table("trajectory.csv", table);
  ctx.results["snapshots"] = traj.times.size();
  ctx.results["final_time"] = traj.times.back();
}

void run_verify_identities(RunContext& ctx, const Field& eta0) {
  const Params params(ctx.config.epsilon);
  CsvTable table({"law", "residual_l2", "exact", "closed_form_l2", "difference_l2"});
  for (LawId law : ctx.config.laws) {
    const Field computed = residual(law, eta0, params);
    const Field closed = residual_closed_form(law, eta0, params);
    const double r = norms(computed).l2;
    const double c = norms(closed).l2;
    const double diff = norms(computed - closed).l2;
    table.row() << std::string(to_string(law)) << r << (is_exact(law) ? "true" : "false") << c
                << diff;
    const std::string name(to_string(law));
    if (is_exact(law)) {
      ctx.add_check({name + " residual_l2", r, std::nullopt, thresholds::kExactResidual});
    } else {
      ctx.add_check({name + " closed-form relative difference", c > 0.0 ? diff / c : diff,
                     std::nullopt, thresholds::kOracleAgreement});
    }
  }
  ctx.write_table("identities.csv", table);
}

void run_balance_scan(RunContext& ctx, const Profile& profile) {
  const Grid grid = make_grid(ctx.config.n, ctx.config.length);
  SweepOptions options;
  options.sample_times = ctx.config.sample_times;
  options.dt = ctx.config.dt;
  options.scheme = ctx.config.scheme;
  options.threads = ctx.options.threads;

  CsvTable table({"law", "mode", "t", "eps", "residual_l2"});
  json sweeps = json::array();
  for (LawId law : ctx.config.laws) {
    const SweepResult sweep = epsilon_sweep(profile, law, ctx.config.eps_list, grid, options);
    const std::string name(to_string(law));
    for (const SweepPoint& p : sweep.points) {
      if (!p.analysis_norm) continue;
      table.row() << name << "analysis" << 0.0 << p.epsilon << *p.analysis_norm;
    }
    for (std::size_t s = 0; s < sweep.dynamic.size(); ++s) {
      for (const SweepPoint& p : sweep.points) {
        if (s >= p.dynamic_norms.size()) continue;
        table.row() << name << "dynamic" << sweep.dynamic[s].time << p.epsilon
                    << p.dynamic_norms[s];
      }
    }

    json failures = json::array();
    for (const SweepPoint& p : sweep.points) {
      if (p.error) failures.push_back({{"eps", p.epsilon}, {"error", *p.error}});
    }
    json dynamic = json::array();
    for (const DynamicSlope& d : sweep.dynamic) {
      dynamic.push_back({{"t", d.time}, {"fit", fit_to_json(d.fit)}});
    }
    sweeps.push_back({{"law", name},
                      {"fit", fit_to_json(sweep.fit)},
                      {"c_bound", sweep.c_bound},
                      {"dynamic", dynamic},
                      {"failures", failures}});

    if (is_exact(law)) {
      double worst = 0.0;
      for (double v : sweep.residual_norms) worst = std::isfinite(v) ? std::max(worst, v) : v;
      ctx.add_check({name + " max residual_l2", worst, std::nullopt, thresholds::kExactResidual});
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      ctx.add_check({name + " analysis slope", sweep.fit ? sweep.fit->slope : nan,
                     thresholds::kSlopeMin, thresholds::kSlopeMax});
      for (const DynamicSlope& d : sweep.dynamic) {
        ctx.add_check({fmt::format("{} dynamic slope t={}", name, d.time),
                       d.fit ? d.fit->slope : nan, thresholds::kSlopeMin, thresholds::kSlopeMax});
      }
    }
    if (!sweep.complete()) {
      ctx.add_check({name + " failed runs", static_cast<double>(failures.size()), std::nullopt, 0.0});
    }
  }
  ctx.results["sweeps"] = sweeps;
  ctx.write_table("balance_scan.csv", table);
}

void run_fields(RunContext& ctx, const Field& eta0) {
  const Params params(ctx.config.epsilon);
  json slices = json::array();
  for (double z : ctx.config.z_levels) {
    const ColumnSlice u = column_slice(FlowQuantity::HorizontalVelocity, eta0, params, z);
    const Field w = vertical_velocity(eta0, params, z);
    const Field p = dynamic_pressure(eta0, params, z);
    CsvTable table({"x", "phi_x", "phi_z", "p_dyn"});
    for (std::size_t j = 0; j < eta0.size(); ++j) {
      table.row() << eta0.grid().point(j) << u.values[j] << w[j] << p[j];
    }
    const std::string name = fmt::format("fields_z{}.csv", z);
    ctx.write_table(name, table);
    slices.push_back({{"z", z}, {"file", name}, {"exterior_points", u.exterior_count()}});
  }
  ctx.results["slices"] = slices;

  const int nz = ctx.config.nz;
  const Field momentum = column_integral(ColumnKind::Momentum, eta0, params, nz);
  const Field flow_force = column_integral(ColumnKind::FlowForce, eta0, params, nz);
  const Field energy = column_integral(ColumnKind::Energy, eta0, params, nz);
  const Field energy_flux = column_integral(ColumnKind::EnergyFlux, eta0, params, nz);
  const Field i_density = density(LawId::Momentum, eta0, params);
  const Field q_i = flux(LawId::Momentum, eta0, params);
  const Field e_density = density(LawId::Energy, eta0, params);
  const Field q_e = flux(LawId::Energy, eta0, params);
  CsvTable table({"x", "momentum", "flow_force", "energy", "energy_flux", "I", "q_I", "E", "q_E"});
  for (std::size_t j = 0; j < eta0.size(); ++j) {
    table.row() << eta0.grid().point(j) << momentum[j] << flow_force[j] << energy[j]
                << energy_flux[j] << i_density[j] << q_i[j] << e_density[j] << q_e[j];
  }
  ctx.write_table("column_integrals.csv", table);
  ctx.results["column_linf_difference"] = {
      {"Momentum", norms(momentum - i_density).linf},
      {"FlowForce", norms(flow_force - q_i).linf},
      {"Energy", norms(energy - e_density).linf},
      {"EnergyFlux", norms(energy_flux - q_e).linf}};
}

void run_drift(RunContext& ctx, const Field& eta0) {
  const Trajectory traj = simulate(eta0, solver_config(ctx.config));
  const DriftReport report = invariant_drift(traj);
  CsvTable table({"t", "m1", "m2", "m3"});
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    table.row() << report.times[i] << report.m1[i] << report.m2[i] << report.m3[i];
  }
  ctx.write_table("drift.csv", table);
  const char* labels[] = {"m1", "m2", "m3"};
  for (std::size_t q = 0; q < 3; ++q) {
    ctx.add_check({fmt::format("{} max relative drift", labels[q]), report.max_rel_drift[q],
                   std::nullopt, thresholds::kDrift});
  }
}

void write_manifest(const fs::path& dir, const json& manifest) {
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + (dir / "manifest.json").string());
}

}  // namespace

int run(const RunConfig& config, const RunOptions& options, std::ostream& log) {
  const fs::path dir(config.output_dir);
  try {
    fs::create_directories(dir);
  } catch (const std::exception& err) {
    log << "error: cannot create output directory " << dir << ": " << err.what() << '\n';
    return kExitError;
  }

  RunContext ctx(config, options, log);
  int exit_code = kExitOk;
  std::string status = "complete";
  std::optional<std::string> error;
  try {
    const Profile profile = resolve_profile(config);
    const Field eta0 = sample(profile, make_grid(config.n, config.length));
    json sobolev = json::array();
    for (int k = 0; k <= kMaxDerivativeOrder; ++k) sobolev.push_back(sobolev_norm(eta0, k));
    ctx.initial_data = {{"profile", describe(profile)}, {"sobolev_norms", sobolev}};
    ctx.say(fmt::format("{}: {} on n={}, L={}, eps={}", to_string(config.command),
                        describe(profile), config.n, config.length, config.epsilon));

    switch (config.command) {
      case Command::Simulate:
        run_simulate(ctx, eta0);
        break;
      case Command::VerifyIdentities:
        run_verify_identities(ctx, eta0);
        break;
      case Command::BalanceScan:
        run_balance_scan(ctx, profile);
        break;
      case Command::Fields:
        run_fields(ctx, eta0);
        break;
      case Command::Drift:
        run_drift(ctx, eta0);
        break;
    }
    if (!ctx.all_passed()) exit_code = kExitCheckFailed;
  } catch (const std::exception& err) {
    exit_code = kExitError;
    status = "partial";
    error = err.what();
    log << "error: " << err.what() << '\n';
  }

  try {
    write_manifest(dir, ctx.manifest(status, exit_code, error));
  } catch (const std::exception& err) {
    log << "error: " << err.what() << '\n';
    return kExitError;
  }
  return exit_code;
}

void write_error_manifest(const fs::path& output_dir, const std::string& message) {
  fs::create_directories(output_dir);
  const json doc = {{"tool", "kdv"},
                    {"version", kVersion},
                    {"thresholds_version", thresholds::kThresholdsVersion},
                    {"status", "error"},
                    {"exit_code", kExitError},
                    {"error", message}};
  write_manifest(output_dir, doc);
}

}  // namespace kdv
