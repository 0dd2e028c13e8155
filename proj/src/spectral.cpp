#include "kdv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "kdv/detail/fft.hpp"
#include "kdv/error.hpp"

namespace kdv {

using detail::Spectrum;

Field derivative(const Field& f, int order) {
  if (order < 1 || order > kMaxDerivativeOrder) {
    throw ConfigError("derivative order must be in [1, 6], got " + std::to_string(order));
  }
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  Spectrum spec = detail::forward(f.values());
  // i^order, cycled exactly to keep even orders purely real.
  static constexpr std::complex<double> kUnitPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0},
                                                         {0.0, -1.0}};
  const std::complex<double> phase = kUnitPowers[order % 4];
  for (std::size_t m = 0; m < spec.size(); ++m) {
    if (m == n / 2 && order % 2 == 1) {
      spec[m] = 0.0;
      continue;
    }
    spec[m] *= phase * std::pow(grid.mode_wavenumber(m), order);
  }
  return Field(grid, detail::inverse(std::move(spec), n));
}

double integral(const Field& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return f.grid().length() * sum / static_cast<double>(f.size());
}

Norms norms(const Field& f) {
  Norms out;
  double sum_sq = 0.0;
  for (double v : f.values()) {
    sum_sq += v * v;
    out.linf = std::max(out.linf, std::abs(v));
  }
  out.l2 = std::sqrt(f.grid().length() * sum_sq / static_cast<double>(f.size()));
  return out;
}

double sobolev_norm(const Field& f, int k) {
  if (k < 0 || k > kMaxDerivativeOrder) {
    throw ConfigError("Sobolev index must be in [0, 6], got " + std::to_string(k));
  }
  double total = std::pow(norms(f).l2, 2);
  for (int j = 1; j <= k; ++j) total += std::pow(norms(derivative(f, j)).l2, 2);
  return std::sqrt(total);
}

Field dealias(const Field& f) {
  const std::size_t n = f.size();
  Spectrum spec = detail::forward(f.values());
  const std::size_t cutoff = f.grid().dealias_cutoff();
  for (std::size_t m = cutoff + 1; m < spec.size(); ++m) spec[m] = 0.0;
  return Field(f.grid(), detail::inverse(std::move(spec), n));
}

Field product(const Field& a, const Field& b) { return dealias(a * b); }

}  // namespace kdv
