// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// measured numbers. Exits non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "kdv/balance_laws.hpp"
#include "kdv/config.hpp"
#include "kdv/dynamics.hpp"
#include "kdv/experiments.hpp"
#include "kdv/flow_fields.hpp"
#include "kdv/run.hpp"
#include "kdv/spectral.hpp"
#include "kdv/thresholds.hpp"

using namespace kdv;
namespace th = kdv::thresholds;

namespace {

constexpr std::array<LawId, 3> kApproximate = {LawId::Momentum, LawId::Energy, LawId::EnergyStar};
constexpr std::array<LawId, 3> kExact = {LawId::Mass, LawId::QuadraticInvariant, LawId::CubicInvariant};

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, std::string line) {
    passed = passed && ok;
    details.push_back(fmt::format("{} {}", ok ? "ok  " : "BAD ", line));
  }
  void note(std::string line) { details.push_back("info " + line); }
};

struct NamedField {
  std::string name;
  Field eta;
};

double l2(const Field& f) { return norms(f).l2; }

double max_abs_diff(const Field& a, const Field& b) { return norms(a - b).linf; }

std::string law_name(LawId law) { return std::string(to_string(law)); }

Field gaussian(const Grid& g, double amp, double width, double x0) {
  return sample(GaussianProfile{amp, width, x0}, g);
}

// 1. Exact identities vanish to rounding; approximate balances do not.
Outcome exact_identity_discriminator() {
  Outcome out;
  const Grid g = make_grid(1024, 100);
  const Params p(0.1);
  const std::vector<NamedField> profiles = {
      {"solitary A=1", solitary_wave(1.0, p, 50, 0, g)},
      {"gaussian 1.0 w=5", gaussian(g, 1.0, 5, 50)},
  };
  for (const auto& [name, eta] : profiles) {
    for (LawId law : kExact) {
      const double r = l2(residual(law, eta, p));
      out.require(r <= th::kExactResidual, fmt::format("{:<18} {:<18} {:.3e} <= {:.0e}", name, law_name(law), r,
                                                       th::kExactResidual));
    }
    for (LawId law : kApproximate) {
      const double r = l2(residual(law, eta, p));
      out.require(r >= th::kApproximateResidualFloor,
                  fmt::format("{:<18} {:<18} {:.3e} >= {:.0e}", name, law_name(law), r,
                              th::kApproximateResidualFloor));
    }
  }
  const double small = l2(residual(LawId::EnergyStar, gaussian(g, 0.3, 5, 50), p));
  out.note(fmt::format("gaussian 0.3 w=5 EnergyStar {:.3e} (amplitude 0.3 sits below the floor)", small));
  return out;
}

// 2. Computed residuals agree with the closed forms across five profiles.
Outcome proof_oracle_equivalence() {
  Outcome out;
  const Grid g = make_grid(1024, 100);
  const Params p(0.1);
  const std::vector<NamedField> profiles = {
      {"solitary A=1", solitary_wave(1.0, p, 50, 0, g)},
      {"solitary A=0.5", solitary_wave(0.5, p, 50, 0, g)},
      {"gaussian 0.3 w=5", gaussian(g, 0.3, 5, 50)},
      {"sech2 0.5/0.8", sample(Sech2Profile{0.5, 0.8, 50}, g)},
      {"two gaussians", gaussian(g, 0.4, 3, 54) + gaussian(g, 0.25, 4, 45)},
  };
  for (const auto& [name, eta] : profiles) {
    for (LawId law : kApproximate) {
      const Field closed = residual_closed_form(law, eta, p);
      const double rel = l2(residual(law, eta, p) - closed) / l2(closed);
      out.require(rel <= th::kOracleAgreement,
                  fmt::format("{:<18} {:<12} relative {:.3e} <= {:.0e}", name, law_name(law), rel,
                              th::kOracleAgreement));
    }
  }
  return out;
}

std::string describe_fit(const std::optional<LogLogFit>& fit) {
  return fit ? fmt::format("{:.4f} (r2 {:.6f})", fit->slope, fit->r2) : std::string("missing");
}

// 3. eps^2 scaling in analysis mode and along trajectories.
Outcome eps_squared_scaling() {
  Outcome out;
  const Grid g = make_grid(1024, 100);
  const Sech2Profile sech{0.5, 0.8, 50};
  for (LawId law : kApproximate) {
    const SweepResult r = epsilon_sweep(sech, law, kDefaultEpsilonLadder, g);
    const bool tight = law != LawId::EnergyStar;
    const double lo = tight ? th::kExactSlopeMin : th::kSlopeMin;
    const double hi = tight ? th::kExactSlopeMax : th::kSlopeMax;
    const bool ok = r.fit && r.fit->slope >= lo && r.fit->slope <= hi;
    out.require(ok, fmt::format("analysis sech2 0.5/0.8  {:<11} slope {} in [{}, {}], C = {:.4e}", law_name(law),
                                describe_fit(r.fit), lo, hi, r.c_bound));
  }

  // Dynamic mode: wide box so dispersive radiation stays clear of the edges.
  const Grid wide = make_grid(4096, 400);
  SweepOptions options;
  options.sample_times = {0, 5, 10};
  options.threads = threads_from_environment();
  const auto dynamic = [&](const Profile& profile, const std::string& name, bool required) {
    for (LawId law : kApproximate) {
      const SweepResult r = epsilon_sweep(profile, law, kDefaultEpsilonLadder, wide, options);
      for (const DynamicSlope& d : r.dynamic) {
        const bool ok = r.complete() && d.fit && d.fit->slope >= th::kSlopeMin && d.fit->slope <= th::kSlopeMax;
        const std::string line = fmt::format("dynamic {:<17} {:<11} t={:<3} slope {} in [{}, {}]", name,
                                             law_name(law), d.time, describe_fit(d.fit), th::kSlopeMin,
                                             th::kSlopeMax);
        if (required) {
          out.require(ok, line);
        } else {
          out.note(line + (ok ? "" : "  (outside)"));
        }
      }
    }
  };
  dynamic(GaussianProfile{0.3, 5, 200}, "gaussian 0.3 w=5", true);
  dynamic(SolitaryProfile{1.0, 200}, "solitary A=1", true);
  // The sech2 profile is not a traveling wave: its evolution over t = 10
  // depends on eps, which tilts the fitted exponent. Reported, not gated.
  dynamic(Sech2Profile{0.5, 0.8, 200}, "sech2 0.5/0.8", false);
  return out;
}

// 4. Residual norms stay uniformly bounded in time.
Outcome time_uniformity_check() {
  Outcome out;
  const UniformityReport sol =
      time_uniformity(SolitaryProfile{1.0, 25}, LawId::Momentum, Params(0.1), make_grid(1024, 100), 50);
  out.require(sol.ratio <= th::kUniformityRatio,
              fmt::format("solitary Momentum t<=50: max/initial {:.6f} <= {} over {} snapshots", sol.ratio,
                          th::kUniformityRatio, sol.series.size()));

  const UniformityReport gau =
      time_uniformity(GaussianProfile{0.3, 5, 100}, LawId::Energy, Params(0.1), make_grid(2048, 200), 20);
  out.require(gau.growth_rate <= th::kGrowthRate,
              fmt::format("gaussian Energy t<=20: growth rate {:.3e} <= {:.0e} per unit time", gau.growth_rate,
                          th::kGrowthRate));
  out.note(fmt::format("gaussian Energy max/initial {:.6f}", gau.ratio));
  return out;
}

Trajectory run_solitary(std::size_t n, double dt, double t_end, std::size_t stride, bool guard) {
  SolverConfig config{Params(0.1), make_grid(n, 100), dt};
  config.t_end = t_end;
  config.snapshot_stride = stride;
  config.tail_guard = guard;
  return simulate(sample(SolitaryProfile{1.0, 25}, config.grid), config);
}

// 5. The three conserved integrals do not drift.
Outcome invariant_conservation() {
  Outcome out;
  const DriftReport report = invariant_drift(run_solitary(1024, 0.005, 50, 200, true));
  const char* names[] = {"m1", "m2", "m3"};
  for (std::size_t q = 0; q < 3; ++q) {
    out.require(report.max_rel_drift[q] <= th::kDrift,
                fmt::format("solitary {} max relative drift {:.3e} <= {:.0e} over {} snapshots", names[q],
                            report.max_rel_drift[q], th::kDrift, report.times.size()));
  }
  return out;
}

// 6. Agreement with the analytic traveling wave and fourth-order convergence.
Outcome solitary_fidelity() {
  Outcome out;
  const Params p(0.1);
  const Grid g = make_grid(1024, 100);
  const Field eta0 = solitary_wave(1.0, p, 25, 0, g);
  const Field exact = solitary_wave(1.0, p, 25, 10, g);
  const auto error_at = [&](double dt) {
    return max_abs_diff(advance(eta0, SolverConfig{p, g, dt}, std::size_t(std::lround(10 / dt))), exact);
  };
  const double e = error_at(0.005);
  out.require(e <= th::kSolitaryLinf, fmt::format("dt=0.005 t=10 Linf error {:.3e} <= {:.0e}", e, th::kSolitaryLinf));

  const std::vector<double> dts = {0.008, 0.004, 0.002};
  std::vector<std::pair<double, double>> pts;
  for (double dt : dts) pts.emplace_back(dt, error_at(dt));
  const LogLogFit fit = fit_loglog_slope(pts);
  out.require(fit.slope >= th::kTemporalOrderMin,
              fmt::format("order over dt {{0.008, 0.004, 0.002}}: {:.3f} >= {} (errors {:.2e}, {:.2e}, {:.2e})",
                          fit.slope, th::kTemporalOrderMin, pts[0].second, pts[1].second, pts[2].second));
  return out;
}

// 7. Column integrals reproduce the printed densities and fluxes to O(eps^3).
Outcome column_consistency() {
  Outcome out;
  const Grid g = make_grid(1024, 100);
  const Field eta = sample(SolitaryProfile{1.0, 50}, g);
  struct Target {
    ColumnKind kind;
    LawId law;
    bool is_density;
    const char* label;
  };
  const Target targets[] = {{ColumnKind::Momentum, LawId::Momentum, true, "I"},
                            {ColumnKind::FlowForce, LawId::Momentum, false, "q_I"},
                            {ColumnKind::Energy, LawId::Energy, true, "E"},
                            {ColumnKind::EnergyFlux, LawId::Energy, false, "q_E"}};
  for (const Target& t : targets) {
    std::vector<std::pair<double, double>> pts;
    for (double e : {0.05, 0.1, 0.2}) {
      const Params p(e);
      const Field printed = t.is_density ? density(t.law, eta, p) : flux(t.law, eta, p);
      pts.emplace_back(e, max_abs_diff(column_integral(t.kind, eta, p, 128), printed));
    }
    const LogLogFit fit = fit_loglog_slope(pts);
    out.require(fit.slope >= th::kColumnSlopeMin,
                fmt::format("{:<10} vs {:<3} slope {:.4f} >= {} (Linf {:.2e}, {:.2e}, {:.2e})",
                            to_string(t.kind), t.label, fit.slope, th::kColumnSlopeMin, pts[0].second,
                            pts[1].second, pts[2].second));
  }
  return out;
}

// 8. Negative controls: corrupted fluxes and under-resolved runs are caught.
Outcome negative_controls() {
  Outcome out;
  const Params p(0.1);
  const Field eta = solitary_wave(1.0, p, 50, 0, make_grid(1024, 100));
  const LawForm& base = law_form(LawId::QuadraticInvariant);
  for (std::size_t i = 0; i < base.flux.size(); ++i) {
    LawForm corrupted = base;
    corrupted.flux[i].coefficient *= 1.1;
    const double r = l2(residual(corrupted, eta, p));
    out.require(r > th::kCorruptedResidualFloor,
                fmt::format("QuadraticInvariant flux term {} x1.1: residual {:.3e} > {:.0e}", i, r,
                            th::kCorruptedResidualFloor));
  }

  const DriftReport coarse = invariant_drift(run_solitary(64, 0.01, 50, 500, false));
  out.require(coarse.worst() > th::kDrift,
              fmt::format("n=64 drift {:.3e} exceeds {:.0e} and is reported as a failure", coarse.worst(), th::kDrift));

  RunConfig config = parse_config(R"({"command": "drift", "grid": {"n": 64, "length": 100}, "epsilon": 0.1,
                                      "solver": {"dt": 0.01, "t_end": 50, "snapshot_stride": 500},
                                      "profile": {"type": "solitary", "x0": 25}})");
  config.output_dir = (std::filesystem::temp_directory_path() / "kdv_acceptance_underresolved").string();
  std::ostringstream log;
  const int code = run(config, RunOptions{true, 1}, log);
  out.require(code != kExitOk, fmt::format("n=64 drift command exits with status {} (non-zero)", code));
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact-identity discriminator", exact_identity_discriminator},
      {2, "proof-oracle equivalence", proof_oracle_equivalence},
      {3, "eps^2 scaling (analysis and dynamic)", eps_squared_scaling},
      {4, "time uniformity", time_uniformity_check},
      {5, "invariant conservation", invariant_conservation},
      {6, "solitary-wave fidelity", solitary_fidelity},
      {7, "column-integral consistency", column_consistency},
      {8, "negative controls", negative_controls},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& err) {
      outcome.passed = false;
      outcome.details.push_back(fmt::format("BAD  exception: {}", err.what()));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} criterion {}: {} ({:.1f} s)\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name, seconds);
    for (const std::string& line : outcome.details) fmt::print("       {}\n", line);
    std::fflush(stdout);
    failures += outcome.passed ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
