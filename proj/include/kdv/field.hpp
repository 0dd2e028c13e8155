#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kdv/grid.hpp"

namespace kdv {

/// Real samples of a function of x on a Grid.
///
/// Every public constructor and arithmetic operation rejects non-finite
/// values with NonFiniteError. Binary operations require equal grids and
/// throw ConfigError otherwise.
class Field {
 public:
  Field(Grid grid, std::vector<double> values);

  static Field zeros(const Grid& grid);
  static Field constant(const Grid& grid, double value);

  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = f(grid.point(j));
    return Field(grid, std::move(values));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double scale);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator-(Field a) { return a *= -1.0; }

  /// Pointwise product, no dealiasing.
  friend Field operator*(const Field& a, const Field& b);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  void require_same_grid(const Field& other) const;
  void require_finite() const;

  Grid grid_;
  std::vector<double> values_;
};

}  // namespace kdv
