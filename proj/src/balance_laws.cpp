#include "kdv/balance_laws.hpp"

#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "kdv/error.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

std::string_view to_string(LawId law) {
  switch (law) {
    case LawId::Mass:
      return "Mass";
    case LawId::QuadraticInvariant:
      return "QuadraticInvariant";
    case LawId::CubicInvariant:
      return "CubicInvariant";
    case LawId::Momentum:
      return "Momentum";
    case LawId::Energy:
      return "Energy";
    case LawId::EnergyStar:
      return "EnergyStar";
  }
  return "unknown";
}

std::optional<LawId> law_from_string(std::string_view name) {
  for (LawId law : kAllLaws) {
    if (to_string(law) == name) return law;
  }
  return std::nullopt;
}

namespace {

constexpr Factor kEta{0, false};
constexpr Factor kEtaX{1, false};
constexpr Factor kEtaXX{2, false};
constexpr Factor kEtaT{0, true};

LawForm make_form(LawId id) {
  switch (id) {
    case LawId::Mass:
      return {id,
              {{1.0, 0, {kEta}}},
              {{1.0, 0, {kEta}}, {0.75, 1, {kEta, kEta}}, {1.0 / 6.0, 1, {kEtaXX}}},
              0};
    case LawId::QuadraticInvariant:
      return {id,
              {{1.0, 0, {kEta, kEta}}},
              {{1.0, 0, {kEta, kEta}},
               {1.0, 1, {kEta, kEta, kEta}},
               {1.0 / 3.0, 1, {kEta, kEtaXX}},
               {-1.0 / 6.0, 1, {kEtaX, kEtaX}}},
              0};
    case LawId::CubicInvariant:
      return {id,
              {{1.0, 0, {kEta, kEta, kEta}}, {-1.0 / 3.0, 0, {kEtaX, kEtaX}}},
              {{1.0, 0, {kEta, kEta, kEta}},
               {9.0 / 8.0, 1, {kEta, kEta, kEta, kEta}},
               {2.0 / 3.0, 0, {kEtaX, kEtaT}},
               {1.0 / 3.0, 0, {kEtaX, kEtaX}},
               {1.0 / 18.0, 1, {kEtaXX, kEtaXX}},
               {0.5, 1, {kEta, kEta, kEtaXX}}},
              0};
    case LawId::Momentum:
      return {id,
              {{1.0, 1, {kEta}}, {0.75, 2, {kEta, kEta}}, {1.0 / 6.0, 2, {kEtaXX}}},
              {{0.5, 0, {}}, {1.0, 1, {kEta}}, {1.5, 2, {kEta, kEta}}, {1.0 / 3.0, 2, {kEtaXX}}},
              1};
    case LawId::Energy:
      return {id,
              {{0.5, 0, {}}, {1.0, 1, {kEta}}, {1.0, 2, {kEta, kEta}}},
              {{1.0, 1, {kEta}}, {1.75, 2, {kEta, kEta}}, {1.0 / 6.0, 2, {kEtaXX}}},
              1};
    case LawId::EnergyStar:
      return {id,
              {{1.0, 2, {kEta, kEta}},
               {0.25, 3, {kEta, kEta, kEta}},
               {1.0 / 6.0, 3, {kEta, kEtaXX}},
               {1.0 / 6.0, 3, {kEtaX, kEtaX}}},
              {{1.0, 2, {kEta, kEta}}, {1.25, 3, {kEta, kEta, kEta}}, {0.5, 3, {kEta, kEtaXX}}},
              2};
  }
  throw ConfigError("unknown law");
}

// Lazily computed x-derivatives of eta and of eta_t.
class Jets {
 public:
  Jets(const Field& eta, const Params& params, std::optional<Field> eta_t = std::nullopt)
      : eta_(eta), params_(params), eta_t_(std::move(eta_t)) {}

  const Field& get(const Factor& factor) {
    if (factor.order < 0 || factor.order > kMaxDerivativeOrder) {
      throw ConfigError(fmt::format("unsupported derivative order {}", factor.order));
    }
    if (!factor.of_time_derivative) {
      if (factor.order == 0) return eta_;
      auto& slot = space_[factor.order];
      if (!slot) slot = derivative(eta_, factor.order);
      return *slot;
    }
    if (!eta_t_) eta_t_ = kdv_rhs(eta_, params_);
    if (factor.order == 0) return *eta_t_;
    auto& slot = time_[factor.order];
    if (!slot) slot = derivative(*eta_t_, factor.order);
    return *slot;
  }

  const Grid& grid() const { return eta_.grid(); }
  double epsilon() const { return params_.epsilon(); }

 private:
  const Field& eta_;
  const Params& params_;
  std::optional<Field> eta_t_;
  std::array<std::optional<Field>, kMaxDerivativeOrder + 1> space_;
  std::array<std::optional<Field>, kMaxDerivativeOrder + 1> time_;
};

double term_scale(const Term& term, double eps) {
  return term.coefficient * std::pow(eps, term.eps_power);
}

// Product of the given factors, dealiased when it is nonlinear. `swap`
// replaces factor `swap_index` by `replacement` (used by the chain rule).
Field monomial(Jets& jets, const std::vector<Factor>& factors,
               std::optional<std::size_t> swap_index = std::nullopt,
               const Factor* replacement = nullptr) {
  auto pick = [&](std::size_t i) -> const Field& {
    return jets.get(swap_index && *swap_index == i ? *replacement : factors[i]);
  };
  if (factors.empty()) return Field::constant(jets.grid(), 1.0);
  Field out = pick(0);
  for (std::size_t i = 1; i < factors.size(); ++i) out = out * pick(i);
  return factors.size() > 1 ? dealias(out) : out;
}

Field sum_terms(Jets& jets, const std::vector<Term>& terms) {
  Field out = Field::zeros(jets.grid());
  for (const Term& term : terms) out += term_scale(term, jets.epsilon()) * monomial(jets, term.factors);
  return out;
}

Field time_derivative_of(Jets& jets, const std::vector<Term>& terms) {
  Field out = Field::zeros(jets.grid());
  for (const Term& term : terms) {
    const double scale = term_scale(term, jets.epsilon());
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      const Factor& f = term.factors[i];
      if (f.of_time_derivative) {
        throw ConfigError("densities may not contain time derivatives");
      }
      const Factor dt_factor{f.order, true};
      out += scale * monomial(jets, term.factors, i, &dt_factor);
    }
  }
  return out;
}

double epsilon_scale(const LawForm& form, double eps) {
  if (form.scale_power == 0) return 1.0;
  if (eps == 0.0) {
    throw ConfigError(fmt::format("eps-scaled residual of {} is undefined for eps = 0",
                                  to_string(form.id)));
  }
  return 1.0 / std::pow(eps, form.scale_power);
}

}  // namespace

const LawForm& law_form(LawId law) {
  static const std::array<LawForm, 6> forms = {
      make_form(LawId::Mass),     make_form(LawId::QuadraticInvariant),
      make_form(LawId::CubicInvariant), make_form(LawId::Momentum),
      make_form(LawId::Energy),   make_form(LawId::EnergyStar)};
  return forms[static_cast<std::size_t>(law)];
}

Field density(const LawForm& form, const Field& eta, const Params& params) {
  Jets jets(eta, params);
  return sum_terms(jets, form.density);
}

Field flux(const LawForm& form, const Field& eta, const Params& params) {
  Jets jets(eta, params);
  return sum_terms(jets, form.flux);
}

Field density(LawId law, const Field& eta, const Params& params) {
  return density(law_form(law), eta, params);
}

Field flux(LawId law, const Field& eta, const Params& params) {
  return flux(law_form(law), eta, params);
}

Field density_time_derivative(const LawForm& form, const Field& eta, const Params& params) {
  Jets jets(eta, params);
  return time_derivative_of(jets, form.density);
}

Field density_time_derivative(LawId law, const Field& eta, const Params& params) {
  return density_time_derivative(law_form(law), eta, params);
}

Field residual(const LawForm& form, const Field& eta, const Params& params) {
  const double scale = epsilon_scale(form, params.epsilon());
  Jets jets(eta, params);
  Field out = time_derivative_of(jets, form.density);
  out += derivative(sum_terms(jets, form.flux), 1);
  return scale * out;
}

Field residual(LawId law, const Field& eta, const Params& params) {
  return residual(law_form(law), eta, params);
}

Field residual_closed_form(LawId law, const Field& eta, const Params& params) {
  const double eps = params.epsilon();
  if (is_exact(law)) return Field::zeros(eta.grid());

  const Field eta_x = derivative(eta, 1);
  const Field eta_xxx = derivative(eta, 3);
  if (law == LawId::Energy) {
    return (-3.0 * eps * eps) * dealias(eta * eta * eta_x) +
           (-eps * eps / 3.0) * product(eta, eta_xxx);
  }

  // N = eta_t + eta_x for a KdV solution.
  const Field n = -eps * (1.5 * product(eta, eta_x) + (1.0 / 6.0) * eta_xxx);
  const Field n_xx = derivative(n, 2);
  if (law == LawId::Momentum) {
    return (1.5 * eps) * product(eta, n) + (eps / 6.0) * n_xx;
  }
  const Field eta_xx = derivative(eta, 2);
  const Field n_x = derivative(n, 1);
  return (0.75 * eps) * dealias(eta * eta * n) + (eps / 6.0) * product(eta, n_xx) +
         (eps / 6.0) * product(n, eta_xx) + (eps / 3.0) * product(eta_x, n_x);
}

Field residual_time_differenced(LawId law, const Field& previous, const Field& current,
                                const Field& next, double dt, const Params& params) {
  if (!(dt > 0.0)) throw ConfigError("time spacing must be positive");
  const LawForm& form = law_form(law);
  const double scale = epsilon_scale(form, params.epsilon());
  Field eta_t = (next - previous) * (0.5 / dt);
  Field d_t = (density(form, next, params) - density(form, previous, params)) * (0.5 / dt);
  Jets jets(current, params, std::move(eta_t));
  d_t += derivative(sum_terms(jets, form.flux), 1);
  return scale * d_t;
}

ConservedIntegrals conserved_integrals(const Field& eta) {
  const Field eta_x = derivative(eta, 1);
  return {integral(eta), integral(eta * eta),
          integral((1.0 / 3.0) * (eta_x * eta_x) - eta * eta * eta)};
}

}  // namespace kdv
