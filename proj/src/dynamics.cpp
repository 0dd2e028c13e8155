#include "kdv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "kdv/detail/fft.hpp"
#include "kdv/error.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

using detail::Spectrum;
using cplx = std::complex<double>;

Params::Params(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw ConfigError(fmt::format("epsilon out of range (0, 0.5]: {}", epsilon));
  }
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::ETDRK4:
      return "ETDRK4";
    case Scheme::IFRK4:
      return "IFRK4";
  }
  return "unknown";
}

namespace {

constexpr double kBlowUpThreshold = 1e6;

// Linear symbol of -d/dx - (eps/6) d^3/dx^3 on mode m. Odd derivatives drop
// the Nyquist mode, so the whole symbol vanishes there.
cplx linear_symbol(const Grid& grid, const Params& params, std::size_t m) {
  if (m == grid.size() / 2) return 0.0;
  const double k = grid.mode_wavenumber(m);
  return {0.0, params.epsilon() * k * k * k / 6.0 - k};
}

// phi-type coefficient functions of ETDRK4. For |z| below the threshold the
// closed forms lose digits to cancellation, so the value is taken as the mean
// over a circle of radius one around z (Cauchy integral formula).
constexpr double kContourThreshold = 0.5;
constexpr int kContourPoints = 32;

template <class F>
cplx contour_mean(cplx z, F&& f) {
  if (std::abs(z) >= kContourThreshold) return f(z);
  cplx sum = 0.0;
  for (int j = 0; j < kContourPoints; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kContourPoints;
    sum += f(z + std::polar(1.0, theta));
  }
  return sum / static_cast<double>(kContourPoints);
}

class Stepper {
 public:
  Stepper(const Grid& grid, const Params& params, double h, Scheme scheme)
      : grid_(grid), params_(params), h_(h), scheme_(scheme) {
    const std::size_t modes = grid.size() / 2 + 1;
    e_.resize(modes);
    e2_.resize(modes);
    nonlinear_symbol_.assign(modes, 0.0);
    const double coef = -0.75 * params.epsilon();
    for (std::size_t m = 0; m <= grid.dealias_cutoff(); ++m) {
      nonlinear_symbol_[m] = cplx(0.0, coef * grid.mode_wavenumber(m));
    }
    if (scheme == Scheme::ETDRK4) {
      q_.resize(modes);
      f1_.resize(modes);
      f2_.resize(modes);
      f3_.resize(modes);
    }
    for (std::size_t m = 0; m < modes; ++m) {
      const cplx z = h * linear_symbol(grid, params, m);
      e_[m] = std::exp(z);
      e2_[m] = std::exp(z / 2.0);
      if (scheme != Scheme::ETDRK4) continue;
      q_[m] = h * contour_mean(z, [](cplx w) { return (std::exp(w / 2.0) - 1.0) / w; });
      f1_[m] = h * contour_mean(z, [](cplx w) {
                 return (-4.0 - w + std::exp(w) * (4.0 - 3.0 * w + w * w)) / (w * w * w);
               });
      f2_[m] = h * contour_mean(z, [](cplx w) {
                 return (2.0 + w + std::exp(w) * (w - 2.0)) / (w * w * w);
               });
      f3_[m] = h * contour_mean(z, [](cplx w) {
                 return (-4.0 - 3.0 * w - w * w + std::exp(w) * (4.0 - w)) / (w * w * w);
               });
    }
  }

  Spectrum step(const Spectrum& v) const {
    return scheme_ == Scheme::ETDRK4 ? step_etdrk4(v) : step_ifrk4(v);
  }

 private:
  // -(3 eps / 4) d/dx (eta^2), dealiased.
  Spectrum nonlinear(const Spectrum& v) const {
    const std::size_t n = grid_.size();
    std::vector<double> eta = detail::inverse(v, n);
    for (double& value : eta) value *= value;
    Spectrum out = detail::forward(eta);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] *= nonlinear_symbol_[m];
    return out;
  }

  Spectrum step_etdrk4(const Spectrum& v) const {
    const std::size_t modes = v.size();
    const Spectrum nv = nonlinear(v);
    Spectrum a(modes), b(modes), c(modes), out(modes);
    for (std::size_t m = 0; m < modes; ++m) a[m] = e2_[m] * v[m] + q_[m] * nv[m];
    const Spectrum na = nonlinear(a);
    for (std::size_t m = 0; m < modes; ++m) b[m] = e2_[m] * v[m] + q_[m] * na[m];
    const Spectrum nb = nonlinear(b);
    for (std::size_t m = 0; m < modes; ++m) c[m] = e2_[m] * a[m] + q_[m] * (2.0 * nb[m] - nv[m]);
    const Spectrum nc = nonlinear(c);
    for (std::size_t m = 0; m < modes; ++m) {
      out[m] = e_[m] * v[m] + nv[m] * f1_[m] + 2.0 * (na[m] + nb[m]) * f2_[m] + nc[m] * f3_[m];
    }
    return out;
  }

  Spectrum step_ifrk4(const Spectrum& v) const {
    const std::size_t modes = v.size();
    const double half = 0.5 * h_;
    const Spectrum k1 = nonlinear(v);
    Spectrum a(modes), b(modes), c(modes), out(modes);
    for (std::size_t m = 0; m < modes; ++m) a[m] = e2_[m] * (v[m] + half * k1[m]);
    const Spectrum k2 = nonlinear(a);
    for (std::size_t m = 0; m < modes; ++m) b[m] = e2_[m] * v[m] + half * k2[m];
    const Spectrum k3 = nonlinear(b);
    for (std::size_t m = 0; m < modes; ++m) c[m] = e_[m] * v[m] + h_ * e2_[m] * k3[m];
    const Spectrum k4 = nonlinear(c);
    for (std::size_t m = 0; m < modes; ++m) {
      out[m] = e_[m] * v[m] +
               h_ / 6.0 * (e_[m] * k1[m] + 2.0 * e2_[m] * (k2[m] + k3[m]) + k4[m]);
    }
    return out;
  }

  Grid grid_;
  Params params_;
  double h_;
  Scheme scheme_;
  std::vector<cplx> e_, e2_, q_, f1_, f2_, f3_, nonlinear_symbol_;
};

void require_bounded(const std::vector<double>& eta, std::size_t step, double time) {
  for (double value : eta) {
    if (!std::isfinite(value) || std::abs(value) > kBlowUpThreshold) {
      throw SolverError(fmt::format("solution blew up after step {} (t = {})", step, time),
                        step, time);
    }
  }
}

// Runs `steps` steps of size h starting at `t0`, tracking the global step
// index for diagnostics.
Spectrum run_steps(Spectrum v, const Stepper& stepper, std::size_t steps, double h,
                   std::size_t first_step, double t0, std::size_t n) {
  for (std::size_t s = 0; s < steps; ++s) {
    v = stepper.step(v);
    const std::size_t index = first_step + s + 1;
    require_bounded(detail::inverse(v, n), index, t0 + static_cast<double>(s + 1) * h);
  }
  return v;
}

}  // namespace

double stable_dt_limit(const Grid& grid, const Params& params) {
  double max_omega = 0.0;
  for (std::size_t m = 1; m <= grid.dealias_cutoff(); ++m) {
    const double k = grid.mode_wavenumber(m);
    max_omega = std::max(max_omega, std::abs(k - params.epsilon() * k * k * k / 6.0));
  }
  constexpr double kCap = 0.01;
  if (max_omega == 0.0) return kCap;
  return std::min(kCap, 0.5 * 2.8 / max_omega);
}

void validate(const SolverConfig& config) {
  if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    throw ConfigError("t_end must be non-negative");
  }
  if (config.snapshot_stride == 0) throw ConfigError("snapshot_stride must be at least 1");
  const double limit = stable_dt_limit(config.grid, config.params);
  if (config.dt > limit * (1.0 + 1e-12)) {
    throw ConfigError(fmt::format("dt = {} exceeds the stability limit {:.6g}", config.dt, limit));
  }
}

Field kdv_rhs(const Field& eta, const Params& params) {
  const double eps = params.epsilon();
  const Field eta_x = derivative(eta, 1);
  Field rhs = -eta_x;
  if (eps != 0.0) {
    rhs -= (1.5 * eps) * product(eta, eta_x);
    rhs -= (eps / 6.0) * derivative(eta, 3);
  }
  return rhs;
}

Field solitary_wave(double amplitude, const Params& params, double x0, double t,
                    const Grid& grid) {
  if (!(amplitude > 0.0)) throw ConfigError("solitary wave amplitude must be positive");
  const double width = std::sqrt(3.0 * amplitude) / 2.0;
  const double speed = 1.0 + params.epsilon() * amplitude / 2.0;
  const double length = grid.length();
  const double edge = 1.0 / std::cosh(width * length / 2.0);
  if (edge * edge > 1e-12) {
    throw TailMassError(fmt::format(
        "domain of length {} is too short for a solitary wave of amplitude {}", length,
        amplitude));
  }
  const double centre = x0 + speed * t;
  return Field::sample(grid, [&](double x) {
    // Distance to the nearest periodic image of the crest.
    double xi = std::remainder(x - centre, length);
    const double s = 1.0 / std::cosh(width * xi);
    return amplitude * s * s;
  });
}

void check_tail_mass(const Field& eta) {
  const auto values = eta.values();
  const std::size_t n = values.size();
  const auto band = static_cast<std::size_t>(std::ceil(kTailBandFraction * static_cast<double>(n)));
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  // A uniform state has nothing that could wrap around.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (peak == 0.0 || *lo == *hi) return;
  double edge = 0.0;
  for (std::size_t j = 0; j < band; ++j) {
    edge = std::max({edge, std::abs(values[j]), std::abs(values[n - 1 - j])});
  }
  if (edge > kTailTolerance * peak) {
    throw TailMassError(fmt::format(
        "tail-mass guard: |eta| = {:.3e} in the edge bands exceeds {:.0e} of the peak {:.3e}",
        edge, kTailTolerance, peak));
  }
}

Field advance(const Field& eta, const SolverConfig& config, std::size_t steps) {
  if (!(eta.grid() == config.grid)) throw ConfigError("initial data and solver use different grids");
  SolverConfig forward = config;
  forward.dt = std::abs(config.dt);
  validate(forward);
  const std::size_t n = eta.size();
  const Stepper stepper(config.grid, config.params, config.dt, config.scheme);
  Spectrum v = run_steps(detail::forward(eta.values()), stepper, steps, config.dt, 0, 0.0, n);
  return Field(eta.grid(), detail::inverse(std::move(v), n));
}

Trajectory simulate(const Field& eta0, const SolverConfig& config) {
  validate(config);
  if (!(eta0.grid() == config.grid)) throw ConfigError("initial data and solver use different grids");

  Trajectory traj{config, {0.0}, {eta0}, {}};
  for (int k = 0; k <= kMaxDerivativeOrder; ++k) traj.initial_sobolev[k] = sobolev_norm(eta0, k);
  if (config.tail_guard) check_tail_mass(eta0);
  if (config.t_end == 0.0) return traj;

  const std::size_t n = eta0.size();
  const double ratio = config.t_end / config.dt;
  auto full_steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  double remainder = config.t_end - static_cast<double>(full_steps) * config.dt;
  if (remainder <= 1e-9 * config.dt) remainder = 0.0;

  const Stepper stepper(config.grid, config.params, config.dt, config.scheme);
  Spectrum v = detail::forward(eta0.values());
  std::size_t done = 0;
  try {
    while (done < full_steps) {
      const std::size_t chunk = std::min(config.snapshot_stride, full_steps - done);
      v = run_steps(std::move(v), stepper, chunk, config.dt, done,
                    static_cast<double>(done) * config.dt, n);
      done += chunk;
      const bool last = done == full_steps && remainder == 0.0;
      const double t = last ? config.t_end : static_cast<double>(done) * config.dt;
      Field state(config.grid, detail::inverse(v, n));
      if (config.tail_guard) check_tail_mass(state);
      if (chunk == config.snapshot_stride || last) {
        traj.times.push_back(t);
        traj.states.push_back(std::move(state));
      }
    }
    if (remainder > 0.0) {
      const Stepper tail(config.grid, config.params, remainder, config.scheme);
      v = run_steps(std::move(v), tail, 1, remainder, done, static_cast<double>(done) * config.dt,
                    n);
      Field state(config.grid, detail::inverse(std::move(v), n));
      if (config.tail_guard) check_tail_mass(state);
      traj.times.push_back(config.t_end);
      traj.states.push_back(std::move(state));
    }
  } catch (const SolverError& err) {
    throw SolverError(fmt::format("simulation failed at t = {}: {}", err.time(), err.what()),
                      err.step(), err.time());
  } catch (const TailMassError& err) {
    const double t = static_cast<double>(done) * config.dt;
    throw TailMassError(fmt::format("simulation invalidated at t = {}: {}", t, err.what()));
  }
  return traj;
}

}  // namespace kdv
