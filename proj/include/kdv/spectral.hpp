#pragma once

#include "kdv/field.hpp"

namespace kdv {

inline constexpr int kMaxDerivativeOrder = 6;

/// Spectral derivative of the given order in [1, 6]. Mode m is multiplied by
/// (i k_m)^order. For odd orders the Nyquist multiplier is zero so that the
/// result stays real; for even orders it is (i k_N)^order, which is real.
Field derivative(const Field& f, int order);

/// Periodic quadrature: length * mean(values). Exact for trigonometric
/// polynomials resolved on the grid.
double integral(const Field& f);

struct Norms {
  double l2 = 0.0;    // sqrt(length * mean(values^2)), continuum-normalized
  double linf = 0.0;  // max |value|
};

Norms norms(const Field& f);

/// sqrt(sum_{j=0..k} ||d^j f/dx^j||_{L2}^2), k in [0, 6].
double sobolev_norm(const Field& f, int k);

/// Two-thirds rule: zero all modes with |m| > n/3.
Field dealias(const Field& f);

/// Dealiased pointwise product.
Field product(const Field& a, const Field& b);

}  // namespace kdv
