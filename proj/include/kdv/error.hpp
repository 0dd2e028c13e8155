#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdv {

/// Invalid construction arguments or run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field value was NaN or infinite.
class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the time integrator when the state blows up.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t step, double time)
      : std::runtime_error(what), step_(step), time_(time) {}

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t step_;
  double time_;
};

/// The solution is not negligible near the periodic boundary, so the
/// periodic box no longer stands in for the whole line.
class TailMassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kdv
