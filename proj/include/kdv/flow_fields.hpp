#pragma once

#include <string_view>
#include <vector>

#include "kdv/dynamics.hpp"
#include "kdv/field.hpp"

namespace kdv {

// Interior flow reconstructed from the free surface. phi_x, phi_z and P'
// are order-one shape functions; the column integrals use the physical
// velocity u = eps phi_x, w = eps phi_z and total pressure
// p = (1 - z) + eps P'.

/// phi_x = eta - (eps/4) eta^2 + eps (1/3 - z^2/2) eta_xx, for 0 <= z <= 1.3.
Field horizontal_velocity(const Field& eta, const Params& params, double z);

/// phi_z = -eps z eta_x, for z >= 0.
Field vertical_velocity(const Field& eta, const Params& params, double z);

/// P' = eta - (eps/2)(z^2 - 1) eta_xx, for z >= 0.
Field dynamic_pressure(const Field& eta, const Params& params, double z);

enum class FlowQuantity { HorizontalVelocity, VerticalVelocity, DynamicPressure };

/// A quantity evaluated at a fixed height. Points where z lies above the
/// local free surface 1 + eps eta(x) are flagged as exterior.
struct ColumnSlice {
  double z = 0.0;
  Field values;
  std::vector<bool> exterior;

  std::size_t exterior_count() const;
};

ColumnSlice column_slice(FlowQuantity quantity, const Field& eta, const Params& params, double z);

enum class ColumnKind { MassFlux, Momentum, FlowForce, Energy, EnergyFlux };

std::string_view to_string(ColumnKind kind);

inline constexpr int kMinColumnNodes = 32;

/// Gauss-Legendre quadrature over each water column [0, 1 + eps eta(x)] of
///   MassFlux, Momentum -> u
///   FlowForce          -> u^2 + p
///   Energy             -> (u^2 + w^2)/2 + z
///   EnergyFlux         -> ((u^2 + w^2)/2 + z) u + p u
/// MassFlux and Momentum coincide because density is one. Requires
/// nz >= 32; every node lies inside the fluid by construction.
Field column_integral(ColumnKind kind, const Field& eta, const Params& params, int nz);

}  // namespace kdv
