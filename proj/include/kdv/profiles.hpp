#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kdv/field.hpp"
#include "kdv/grid.hpp"

namespace kdv {

// Initial-data descriptions. None of them depend on epsilon, so one profile
// can be reused unchanged across an epsilon sweep.

/// A sech^2(sqrt(3A)/2 (x - x0)): the solitary wave at t = 0.
struct SolitaryProfile {
  double amplitude = 1.0;
  double x0 = 50.0;
  friend bool operator==(const SolitaryProfile&, const SolitaryProfile&) = default;
};

/// amplitude * exp(-((x - x0) / width)^2)
struct GaussianProfile {
  double amplitude = 0.3;
  double width = 5.0;
  double x0 = 50.0;
  friend bool operator==(const GaussianProfile&, const GaussianProfile&) = default;
};

/// amplitude * sech^2(steepness (x - x0)), not a traveling wave in general.
struct Sech2Profile {
  double amplitude = 0.5;
  double steepness = 0.8;
  double x0 = 50.0;
  friend bool operator==(const Sech2Profile&, const Sech2Profile&) = default;
};

/// Samples given directly; the grid must have values.size() points.
struct SampledProfile {
  std::vector<double> values;
  friend bool operator==(const SampledProfile&, const SampledProfile&) = default;
};

using Profile = std::variant<SolitaryProfile, GaussianProfile, Sech2Profile, SampledProfile>;

/// Sample the profile on the grid, wrapping localized shapes periodically
/// about x0.
Field sample(const Profile& profile, const Grid& grid);

std::string describe(const Profile& profile);

}  // namespace kdv
