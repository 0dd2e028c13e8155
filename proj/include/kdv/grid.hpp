#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace kdv {

/// Uniform periodic grid on [0, length) with n samples.
///
/// Copies share the immutable point and wavenumber tables. Two grids are
/// equal when their (n, length) pairs are equal, regardless of identity.
class Grid {
 public:
  Grid(std::size_t n, double length);

  std::size_t size() const noexcept { return data_->n; }
  double length() const noexcept { return data_->length; }
  double spacing() const noexcept { return data_->spacing; }
  double point(std::size_t j) const noexcept { return data_->points[j]; }
  std::span<const double> points() const noexcept { return data_->points; }

  /// Wavenumbers 2*pi*m/L in FFT order: m = 0, 1, ..., n/2, -(n/2 - 1), ..., -1.
  /// The Nyquist entry (index n/2) is stored with positive sign.
  std::span<const double> wavenumbers() const noexcept { return data_->wavenumbers; }

  /// Wavenumber of the non-negative mode m in [0, n/2].
  double mode_wavenumber(std::size_t m) const noexcept { return data_->wavenumbers[m]; }

  /// Highest retained mode index under the two-thirds rule.
  std::size_t dealias_cutoff() const noexcept { return data_->n / 3; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.size() == b.size() && a.length() == b.length();
  }

 private:
  struct Data {
    std::size_t n;
    double length;
    double spacing;
    std::vector<double> points;
    std::vector<double> wavenumbers;
  };
  std::shared_ptr<const Data> data_;
};

/// Throws ConfigError for odd n, n < 8 or non-positive length.
Grid make_grid(std::size_t n, double length);

}  // namespace kdv
