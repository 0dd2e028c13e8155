#include "kdv/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kdv/error.hpp"

namespace kdv {

Grid::Grid(std::size_t n, double length) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError("grid size must be even and at least 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite");
  }
  auto data = std::make_shared<Data>();
  data->n = n;
  data->length = length;
  data->spacing = length / static_cast<double>(n);
  data->points.resize(n);
  data->wavenumbers.resize(n);
  const double base = 2.0 * std::numbers::pi / length;
  for (std::size_t j = 0; j < n; ++j) {
    data->points[j] = static_cast<double>(j) * length / static_cast<double>(n);
    const auto m = static_cast<double>(j <= n / 2 ? static_cast<std::ptrdiff_t>(j)
                                                  : static_cast<std::ptrdiff_t>(j) -
                                                        static_cast<std::ptrdiff_t>(n));
    data->wavenumbers[j] = base * m;
  }
  data_ = std::move(data);
}

Grid make_grid(std::size_t n, double length) { return Grid(n, length); }

}  // namespace kdv
