#include "kdv/profiles.hpp"

#include <cmath>

#include <fmt/format.h>

#include "kdv/error.hpp"

namespace kdv {
namespace {

template <class Shape>
Field sample_wrapped(const Grid& grid, double x0, Shape&& shape) {
  const double length = grid.length();
  return Field::sample(grid, [&](double x) { return shape(std::remainder(x - x0, length)); });
}

double sech2(double x) {
  const double s = 1.0 / std::cosh(x);
  return s * s;
}

}  // namespace

Field sample(const Profile& profile, const Grid& grid) {
  struct Visitor {
    const Grid& grid;
    Field operator()(const SolitaryProfile& p) const {
      if (!(p.amplitude > 0.0)) throw ConfigError("solitary amplitude must be positive");
      const double width = std::sqrt(3.0 * p.amplitude) / 2.0;
      return sample_wrapped(grid, p.x0, [&](double xi) { return p.amplitude * sech2(width * xi); });
    }
    Field operator()(const GaussianProfile& p) const {
      if (!(p.width > 0.0)) throw ConfigError("gaussian width must be positive");
      return sample_wrapped(grid, p.x0, [&](double xi) {
        const double r = xi / p.width;
        return p.amplitude * std::exp(-r * r);
      });
    }
    Field operator()(const Sech2Profile& p) const {
      if (!(p.steepness > 0.0)) throw ConfigError("sech2 steepness must be positive");
      return sample_wrapped(grid, p.x0,
                            [&](double xi) { return p.amplitude * sech2(p.steepness * xi); });
    }
    Field operator()(const SampledProfile& p) const {
      if (p.values.size() != grid.size()) {
        throw ConfigError(fmt::format("sampled profile has {} values but the grid has {}",
                                      p.values.size(), grid.size()));
      }
      return Field(grid, p.values);
    }
  };
  return std::visit(Visitor{grid}, profile);
}

std::string describe(const Profile& profile) {
  struct Visitor {
    std::string operator()(const SolitaryProfile& p) const {
      return fmt::format("solitary(A={}, x0={})", p.amplitude, p.x0);
    }
    std::string operator()(const GaussianProfile& p) const {
      return fmt::format("gaussian(amp={}, width={}, x0={})", p.amplitude, p.width, p.x0);
    }
    std::string operator()(const Sech2Profile& p) const {
      return fmt::format("sech2(amp={}, steepness={}, x0={})", p.amplitude, p.steepness, p.x0);
    }
    std::string operator()(const SampledProfile& p) const {
      return fmt::format("sampled({} points)", p.values.size());
    }
  };
  return std::visit(Visitor{}, profile);
}

}  // namespace kdv
