#include "kdv/flow_fields.hpp"

#include <gsl/gsl_integration.h>

#include <limits>
#include <memory>

#include <fmt/format.h>

#include "kdv/error.hpp"
#include "kdv/spectral.hpp"

namespace kdv {
namespace {

constexpr double kMaxHeight = 1.3;

void require_height(double z, double upper) {
  if (!(z >= 0.0)) throw ConfigError(fmt::format("height z must be non-negative, got {}", z));
  if (z > upper) throw ConfigError(fmt::format("height z = {} is above {}", z, upper));
}

struct GlTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};

}  // namespace

Field horizontal_velocity(const Field& eta, const Params& params, double z) {
  require_height(z, kMaxHeight);
  const double eps = params.epsilon();
  return eta - (eps / 4.0) * (eta * eta) + (eps * (1.0 / 3.0 - 0.5 * z * z)) * derivative(eta, 2);
}

Field vertical_velocity(const Field& eta, const Params& params, double z) {
  require_height(z, std::numeric_limits<double>::infinity());
  return (-params.epsilon() * z) * derivative(eta, 1);
}

Field dynamic_pressure(const Field& eta, const Params& params, double z) {
  require_height(z, std::numeric_limits<double>::infinity());
  return eta - (0.5 * params.epsilon() * (z * z - 1.0)) * derivative(eta, 2);
}

std::size_t ColumnSlice::exterior_count() const {
  std::size_t count = 0;
  for (bool flag : exterior) count += flag ? 1 : 0;
  return count;
}

ColumnSlice column_slice(FlowQuantity quantity, const Field& eta, const Params& params, double z) {
  Field values = [&] {
    switch (quantity) {
      case FlowQuantity::HorizontalVelocity:
        return horizontal_velocity(eta, params, z);
      case FlowQuantity::VerticalVelocity:
        return vertical_velocity(eta, params, z);
      case FlowQuantity::DynamicPressure:
        return dynamic_pressure(eta, params, z);
    }
    throw ConfigError("unknown flow quantity");
  }();
  std::vector<bool> exterior(eta.size());
  for (std::size_t j = 0; j < eta.size(); ++j) {
    exterior[j] = z > 1.0 + params.epsilon() * eta[j];
  }
  return {z, std::move(values), std::move(exterior)};
}

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::MassFlux:
      return "MassFlux";
    case ColumnKind::Momentum:
      return "Momentum";
    case ColumnKind::FlowForce:
      return "FlowForce";
    case ColumnKind::Energy:
      return "Energy";
    case ColumnKind::EnergyFlux:
      return "EnergyFlux";
  }
  return "unknown";
}

Field column_integral(ColumnKind kind, const Field& eta, const Params& params, int nz) {
  if (nz < kMinColumnNodes) {
    throw ConfigError(fmt::format("column quadrature needs at least {} nodes, got {}",
                                  kMinColumnNodes, nz));
  }
  const std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nz)));
  std::vector<double> nodes(nz), weights(nz);
  for (int i = 0; i < nz; ++i) {
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &nodes[i], &weights[i],
                                  table.get());
  }

  const double eps = params.epsilon();
  const Field eta_x = derivative(eta, 1);
  const Field eta_xx = derivative(eta, 2);
  std::vector<double> out(eta.size());
  for (std::size_t j = 0; j < eta.size(); ++j) {
    const double depth = 1.0 + eps * eta[j];
    if (!(depth > 0.0)) {
      throw ConfigError(fmt::format("dry column at x = {}", eta.grid().point(j)));
    }
    double sum = 0.0;
    for (int i = 0; i < nz; ++i) {
      const double z = depth * nodes[i];
      const double phi_x =
          eta[j] - 0.25 * eps * eta[j] * eta[j] + eps * (1.0 / 3.0 - 0.5 * z * z) * eta_xx[j];
      const double phi_z = -eps * z * eta_x[j];
      const double p_dyn = eta[j] - 0.5 * eps * (z * z - 1.0) * eta_xx[j];
      const double u = eps * phi_x;
      const double w = eps * phi_z;
      const double p = (1.0 - z) + eps * p_dyn;
      const double kinetic = 0.5 * (u * u + w * w);
      double integrand = 0.0;
      switch (kind) {
        case ColumnKind::MassFlux:
        case ColumnKind::Momentum:
          integrand = u;
          break;
        case ColumnKind::FlowForce:
          integrand = u * u + p;
          break;
        case ColumnKind::Energy:
          integrand = kinetic + z;
          break;
        case ColumnKind::EnergyFlux:
          integrand = (kinetic + z) * u + p * u;
          break;
      }
      sum += weights[i] * integrand;
    }
    out[j] = depth * sum;
  }
  return Field(eta.grid(), std::move(out));
}

}  // namespace kdv
