#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kdv/balance_laws.hpp"
#include "kdv/dynamics.hpp"
#include "kdv/profiles.hpp"

namespace kdv {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares fit of log y against log x. Needs at least three points
/// with positive coordinates; throws ConfigError otherwise.
LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> points);

/// Default epsilon ladder for sweeps.
inline const std::vector<double> kDefaultEpsilonLadder = {0.025, 0.05, 0.1, 0.2};

struct SweepOptions {
  /// Times at which the dynamic mode samples the residual. Empty disables it.
  std::vector<double> sample_times;
  /// Requested step; each run uses min(dt, stable_dt_limit) shrunk so the
  /// sample times are hit exactly.
  double dt = 0.005;
  Scheme scheme = Scheme::ETDRK4;
  /// Worker threads for the independent per-epsilon runs; 0 or 1 is serial.
  unsigned threads = 1;
};

/// Residual norms for one epsilon. An error in the analysis step or along
/// the dynamic run is recorded here and leaves the other points (and, for a
/// dynamic failure, this point's analysis norm) intact.
struct SweepPoint {
  double epsilon = 0.0;
  std::optional<double> analysis_norm;
  std::vector<double> dynamic_norms;  // one per sample time when complete
  double dt_used = 0.0;
  std::optional<std::string> error;
};

struct DynamicSlope {
  double time = 0.0;
  std::optional<LogLogFit> fit;
};

struct SweepResult {
  LawId law = LawId::Momentum;
  std::vector<double> eps_values;
  std::vector<double> residual_norms;  // analysis mode, eps-scaled L2; NaN if failed
  std::vector<SweepPoint> points;
  /// Not fitted for exact laws or when fewer than three runs succeeded.
  std::optional<LogLogFit> fit;
  std::vector<DynamicSlope> dynamic;
  /// max over epsilon of norm / eps^2; the empirical constant C.
  double c_bound = 0.0;

  bool complete() const;
};

/// Eps-scaled residual norms of `law` for the same epsilon-independent
/// profile at every epsilon in the strictly increasing list `eps_values`.
SweepResult epsilon_sweep(const Profile& profile, LawId law, std::span<const double> eps_values,
                          const Grid& grid, const SweepOptions& options = {});

struct DriftReport {
  std::vector<double> times;
  std::vector<double> m1, m2, m3;
  std::array<double, 3> max_rel_drift{};

  double worst() const;
};

/// Per-snapshot conserved integrals and their largest relative deviation
/// from the t = 0 values (absolute deviation when the initial value is 0).
DriftReport invariant_drift(const Trajectory& traj);

struct UniformityOptions {
  double dt = 0.005;
  double sample_interval = 1.0;
  Scheme scheme = Scheme::ETDRK4;
};

struct UniformityReport {
  std::vector<std::pair<double, double>> series;  // (t, eps-scaled L2)
  double initial = 0.0;
  double maximum = 0.0;
  /// maximum / initial, or 1 when both vanish.
  double ratio = 1.0;
  /// Least-squares slope of norm(t) / norm(0) against t.
  double growth_rate = 0.0;
};

/// Sample the residual norm of an approximate law along a trajectory.
UniformityReport time_uniformity(const Profile& profile, LawId law, const Params& params,
                                 const Grid& grid, double t_end,
                                 const UniformityOptions& options = {});

/// Thread count from KDV_THREADS; unset or invalid means 1.
unsigned threads_from_environment();

}  // namespace kdv
