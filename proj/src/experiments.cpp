#include "kdv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "kdv/error.hpp"
#include "kdv/spectral.hpp"

namespace kdv {
namespace {

// Linear least squares y = a + b x, returning (b, a, r^2).
LogLogFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LogLogFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r2 = syy > 0.0 ? 1.0 - std::max(ss_res, 0.0) / syy : 1.0;
  return fit;
}

template <class Task>
void run_parallel(std::size_t count, unsigned threads, Task&& task) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

SweepPoint run_sweep_point(const Field& eta0, LawId law, double eps,
                           const std::vector<double>& sample_times, const SweepOptions& options) {
  SweepPoint point;
  point.epsilon = eps;
  try {
    const Params params(eps);
    point.analysis_norm = norms(residual(law, eta0, params)).l2;
    if (sample_times.empty()) return point;
    const double base_dt = std::min(options.dt, stable_dt_limit(eta0.grid(), params));
    point.dt_used = base_dt;
    Field eta = eta0;
    double t = 0.0;
    std::vector<double> dynamic;
    for (double sample : sample_times) {
      const double span = sample - t;
      if (span > 0.0) {
        const auto steps = static_cast<std::size_t>(std::ceil(span / base_dt - 1e-9));
        SolverConfig config{params, eta0.grid(), span / static_cast<double>(steps), span,
                            options.scheme, steps};
        point.dt_used = std::min(point.dt_used, config.dt);
        eta = advance(eta, config, steps);
        check_tail_mass(eta);
        t = sample;
      }
      dynamic.push_back(norms(residual(law, eta, params)).l2);
    }
    point.dynamic_norms = std::move(dynamic);
  } catch (const std::exception& err) {
    point.error = err.what();
  }
  return point;
}

std::optional<LogLogFit> fit_if_possible(const std::vector<double>& eps,
                                         const std::vector<double>& values) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (std::isfinite(values[i]) && values[i] > 0.0) pts.emplace_back(eps[i], values[i]);
  }
  if (pts.size() < 3) return std::nullopt;
  return fit_loglog_slope(pts);
}

}  // namespace

LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw ConfigError(fmt::format("slope fit needs at least 3 points, got {}", points.size()));
  }
  std::vector<double> lx, ly;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw ConfigError(fmt::format("log-log fit requires positive values, got ({}, {})", x, y));
    }
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  return linear_fit(lx, ly);
}

bool SweepResult::complete() const {
  return std::none_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.error; });
}

SweepResult epsilon_sweep(const Profile& profile, LawId law, std::span<const double> eps_values,
                          const Grid& grid, const SweepOptions& options) {
  if (eps_values.empty()) throw ConfigError("epsilon list is empty");
  for (std::size_t i = 0; i < eps_values.size(); ++i) {
    if (!(eps_values[i] > 0.0 && eps_values[i] <= 0.5)) {
      throw ConfigError(fmt::format("epsilon out of range (0, 0.5]: {}", eps_values[i]));
    }
    if (i > 0 && !(eps_values[i] > eps_values[i - 1])) {
      throw ConfigError("epsilon list must be strictly increasing");
    }
  }
  std::vector<double> sample_times = options.sample_times;
  std::sort(sample_times.begin(), sample_times.end());
  if (!sample_times.empty() && sample_times.front() < 0.0) {
    throw ConfigError("sample times must be non-negative");
  }

  const Field eta0 = sample(profile, grid);
  check_tail_mass(eta0);

  SweepResult result;
  result.law = law;
  result.eps_values.assign(eps_values.begin(), eps_values.end());
  result.points.resize(eps_values.size());
  run_parallel(eps_values.size(), options.threads, [&](std::size_t i) {
    result.points[i] = run_sweep_point(eta0, law, eps_values[i], sample_times, options);
  });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepPoint& p : result.points) {
    result.residual_norms.push_back(p.analysis_norm.value_or(nan));
    if (p.analysis_norm) {
      result.c_bound = std::max(result.c_bound, *p.analysis_norm / (p.epsilon * p.epsilon));
    }
  }
  if (!is_exact(law)) {
    result.fit = fit_if_possible(result.eps_values, result.residual_norms);
    for (std::size_t s = 0; s < sample_times.size(); ++s) {
      std::vector<double> column;
      for (const SweepPoint& p : result.points) {
        column.push_back(s < p.dynamic_norms.size() ? p.dynamic_norms[s] : nan);
      }
      result.dynamic.push_back({sample_times[s], fit_if_possible(result.eps_values, column)});
    }
  }
  return result;
}

double DriftReport::worst() const {
  return *std::max_element(max_rel_drift.begin(), max_rel_drift.end());
}

DriftReport invariant_drift(const Trajectory& traj) {
  if (traj.states.size() < 2) throw ConfigError("drift needs at least two snapshots");
  DriftReport report;
  report.times = traj.times;
  for (const Field& state : traj.states) {
    const ConservedIntegrals c = conserved_integrals(state);
    report.m1.push_back(c.m1);
    report.m2.push_back(c.m2);
    report.m3.push_back(c.m3);
  }
  const std::array<const std::vector<double>*, 3> series = {&report.m1, &report.m2, &report.m3};
  for (std::size_t q = 0; q < 3; ++q) {
    const auto& s = *series[q];
    const double denom = s.front() != 0.0 ? std::abs(s.front()) : 1.0;
    for (double value : s) {
      report.max_rel_drift[q] = std::max(report.max_rel_drift[q], std::abs(value - s.front()) / denom);
    }
  }
  return report;
}

UniformityReport time_uniformity(const Profile& profile, LawId law, const Params& params,
                                 const Grid& grid, double t_end,
                                 const UniformityOptions& options) {
  if (is_exact(law)) throw ConfigError("time uniformity applies to approximate laws only");
  if (!(t_end > 0.0 && t_end <= 100.0)) throw ConfigError("t_end must be in (0, 100]");
  if (!(options.sample_interval > 0.0)) throw ConfigError("sample interval must be positive");

  const auto stride = static_cast<std::size_t>(
      std::max(1.0, std::round(options.sample_interval / options.dt)));
  const SolverConfig config{params, grid, options.dt, t_end, options.scheme, stride};
  const Trajectory traj = simulate(sample(profile, grid), config);

  UniformityReport report;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    report.series.emplace_back(traj.times[i], norms(residual(law, traj.states[i], params)).l2);
  }
  report.initial = report.series.front().second;
  for (const auto& [t, value] : report.series) report.maximum = std::max(report.maximum, value);
  if (report.initial > 0.0) {
    report.ratio = report.maximum / report.initial;
    std::vector<double> ts, rel;
    for (const auto& [t, value] : report.series) {
      ts.push_back(t);
      rel.push_back(value / report.initial);
    }
    if (ts.size() >= 2) report.growth_rate = linear_fit(ts, rel).slope;
  } else {
    report.ratio = report.maximum > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  return report;
}

unsigned threads_from_environment() {
  const char* raw = std::getenv("KDV_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) return 1;
  return static_cast<unsigned>(std::min<long>(value, 256));
}

}  // namespace kdv
