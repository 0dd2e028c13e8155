#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "kdv/dynamics.hpp"
#include "kdv/field.hpp"

namespace kdv {

enum class LawId { Mass, QuadraticInvariant, CubicInvariant, Momentum, Energy, EnergyStar };

inline constexpr std::array<LawId, 6> kAllLaws = {
    LawId::Mass,     LawId::QuadraticInvariant, LawId::CubicInvariant,
    LawId::Momentum, LawId::Energy,             LawId::EnergyStar};

std::string_view to_string(LawId law);
std::optional<LawId> law_from_string(std::string_view name);

/// Mass and the two higher invariants balance exactly; momentum and the two
/// energy pairs only up to O(eps^2).
constexpr bool is_exact(LawId law) {
  return law == LawId::Mass || law == LawId::QuadraticInvariant || law == LawId::CubicInvariant;
}

// Densities and fluxes are sums of monomials in x-derivatives of eta (and,
// for one flux term, of eta_t). Keeping them as data lets the time
// derivative follow from the chain rule and lets tests perturb a single
// coefficient.

struct Factor {
  int order = 0;                    // number of x-derivatives
  bool of_time_derivative = false;  // differentiate eta_t instead of eta
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// coefficient * eps^eps_power * prod(factors); no factors means a constant.
struct Term {
  double coefficient = 0.0;
  int eps_power = 0;
  std::vector<Factor> factors;
  friend bool operator==(const Term&, const Term&) = default;
};

struct LawForm {
  LawId id;
  std::vector<Term> density;
  std::vector<Term> flux;
  /// The eps-scaled residual is (D_t + F_x) / eps^scale_power.
  int scale_power = 0;
};

const LawForm& law_form(LawId law);

/// Physical (unscaled) density and flux. Products are dealiased; eta_t in
/// the cubic-invariant flux is evaluated with kdv_rhs().
Field density(const LawForm& form, const Field& eta, const Params& params);
Field flux(const LawForm& form, const Field& eta, const Params& params);
Field density(LawId law, const Field& eta, const Params& params);
Field flux(LawId law, const Field& eta, const Params& params);

/// dD/dt by the chain rule with eta_t replaced by kdv_rhs(eta).
Field density_time_derivative(const LawForm& form, const Field& eta, const Params& params);
Field density_time_derivative(LawId law, const Field& eta, const Params& params);

/// Eps-scaled residual (D_t + F_x) / eps^scale_power. Throws ConfigError
/// when eps = 0 and scale_power >= 1.
Field residual(const LawForm& form, const Field& eta, const Params& params);
Field residual(LawId law, const Field& eta, const Params& params);

/// Closed-form eps-scaled residual with eta_t eliminated by hand. With
/// N = -eps (3/2 eta eta_x + eta_xxx / 6) = eta_t + eta_x:
///   Momentum:   (3/2) eps eta N + (eps/6) N_xx
///   Energy:     -3 eps^2 eta^2 eta_x - (eps^2/3) eta eta_xxx
///   EnergyStar: (3/4) eps eta^2 N + (eps/6)(eta N_xx + N eta_xx) + (eps/3) eta_x N_x
/// and zero for the exact laws. Every expression carries an overall eps^2.
Field residual_closed_form(LawId law, const Field& eta, const Params& params);

/// Diagnostic variant of residual(): D_t from centred differences of three
/// consecutive states spaced dt apart, fluxes at the middle state. Agrees
/// with residual() to O(dt^2).
Field residual_time_differenced(LawId law, const Field& previous, const Field& current,
                                const Field& next, double dt, const Params& params);

/// m1 = int eta, m2 = int eta^2, m3 = int (eta_x^2 / 3 - eta^3).
struct ConservedIntegrals {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
};

ConservedIntegrals conserved_integrals(const Field& eta);

}  // namespace kdv
