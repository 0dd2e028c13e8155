#include "kdv/field.hpp"

#include <cmath>
#include <string>

#include "kdv/error.hpp"

namespace kdv {

Field::Field(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("field has " + std::to_string(values_.size()) + " samples but grid has " +
                      std::to_string(grid_.size()));
  }
  require_finite();
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.size(), 0.0)); }

Field Field::constant(const Grid& grid, double value) {
  return Field(grid, std::vector<double>(grid.size(), value));
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  require_finite();
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  require_finite();
  return *this;
}

Field& Field::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  require_finite();
  return *this;
}

Field operator*(const Field& a, const Field& b) {
  a.require_same_grid(b);
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a.values_[j] * b.values_[j];
  return Field(a.grid_, std::move(out));
}

void Field::require_same_grid(const Field& other) const {
  if (!(grid_ == other.grid_)) throw ConfigError("fields live on different grids");
}

void Field::require_finite() const {
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw NonFiniteError("non-finite field value at index " + std::to_string(j));
    }
  }
}

}  // namespace kdv
