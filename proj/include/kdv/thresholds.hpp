#pragma once

// Pass/fail thresholds shared by the CLI checks, the acceptance suite and
// the README. Bump kThresholdsVersion whenever a value changes.

namespace kdv::thresholds {

inline constexpr int kThresholdsVersion = 1;

/// L2 norm below which an exact balance law counts as satisfied.
inline constexpr double kExactResidual = 1e-9;
/// Minimum eps-scaled residual that marks a balance as approximate.
inline constexpr double kApproximateResidualFloor = 1e-5;
/// Relative L2 agreement between computed and closed-form residuals.
inline constexpr double kOracleAgreement = 1e-8;

/// Slope window for epsilon^2 scaling.
inline constexpr double kSlopeMin = 1.8;
inline constexpr double kSlopeMax = 2.2;
/// Tighter window where the closed forms carry eps^2 exactly.
inline constexpr double kExactSlopeMin = 1.95;
inline constexpr double kExactSlopeMax = 2.05;

/// Relative drift of the conserved integrals.
inline constexpr double kDrift = 1e-8;

/// Time-uniformity: max/initial residual ratio and growth rate per unit time.
inline constexpr double kUniformityRatio = 1.2;
inline constexpr double kGrowthRate = 1e-3;

/// Column integrals against the printed densities: minimum eps-slope.
inline constexpr double kColumnSlopeMin = 2.8;

/// Negative-control floor for a corrupted flux.
inline constexpr double kCorruptedResidualFloor = 1e-4;

/// Solitary-wave fidelity.
inline constexpr double kSolitaryLinf = 1e-6;
inline constexpr double kTemporalOrderMin = 3.8;

}  // namespace kdv::thresholds
