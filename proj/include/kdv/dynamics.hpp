#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "kdv/field.hpp"
#include "kdv/grid.hpp"

namespace kdv {

/// Small-parameter scaling with the Stokes number fixed to one, so mu equals
/// epsilon and a single parameter remains.
class Params {
 public:
  /// Throws ConfigError unless 0 < epsilon <= 0.5.
  explicit Params(double epsilon);

#ifdef KDV_TESTING
  /// epsilon = 0 reduces the equation to linear advection. Test builds only.
  static Params linear_limit_for_testing() { return Params(0.0, Unchecked{}); }
#endif

  double epsilon() const noexcept { return epsilon_; }
  double mu() const noexcept { return epsilon_; }
  double stokes() const noexcept { return 1.0; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  struct Unchecked {};
  Params(double epsilon, Unchecked) : epsilon_(epsilon) {}

  double epsilon_;
};

enum class Scheme { ETDRK4, IFRK4 };

std::string_view to_string(Scheme scheme);

struct SolverConfig {
  Params params;
  Grid grid;
  double dt = 0.005;
  double t_end = 0.0;
  Scheme scheme = Scheme::ETDRK4;
  std::size_t snapshot_stride = 100;
  /// Run check_tail_mass() at every snapshot of simulate().
  bool tail_guard = true;
};

/// Largest admissible step: min(0.01, 0.5 * 2.8 / max|omega(k)|), where
/// omega(k) = k - epsilon k^3 / 6 is the linear dispersion relation and the
/// maximum runs over the modes kept by the two-thirds rule.
double stable_dt_limit(const Grid& grid, const Params& params);

/// Throws ConfigError when dt <= 0, t_end < 0, snapshot_stride == 0, or dt
/// exceeds stable_dt_limit().
void validate(const SolverConfig& config);

struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<Field> states;
  /// Sobolev norms H^0..H^6 of the initial data.
  std::array<double, 7> initial_sobolev{};
};

/// eta_t = -eta_x - (3 eps / 2) eta eta_x - (eps / 6) eta_xxx, with the
/// nonlinear product dealiased.
Field kdv_rhs(const Field& eta, const Params& params);

/// A sech^2(K (x - x0 - c t)) with K = sqrt(3A)/2 and c = 1 + eps A / 2,
/// wrapped onto the periodic domain. Throws TailMassError when the profile
/// does not decay below 1e-12 * A half a domain away from its crest.
Field solitary_wave(double amplitude, const Params& params, double x0, double t,
                    const Grid& grid);

inline constexpr double kTailBandFraction = 0.05;
inline constexpr double kTailTolerance = 1e-10;

/// Throws TailMassError when |eta| in the outer 5% of the domain on either
/// side exceeds 1e-10 of max |eta|.
void check_tail_mass(const Field& eta);

/// Advance eta by `steps` steps of size config.dt. A negative dt integrates
/// backwards in time. Throws SolverError on blow-up (|eta| > 1e6 or
/// non-finite), naming the step.
Field advance(const Field& eta, const SolverConfig& config, std::size_t steps);

/// Integrate from t = 0 to config.t_end, storing a snapshot every
/// snapshot_stride steps and at t_end. Unless disabled in the config, the
/// tail-mass guard runs at every snapshot. Errors from advance() are
/// rethrown with the failing time in the message.
Trajectory simulate(const Field& eta0, const SolverConfig& config);

}  // namespace kdv
