#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kdv::detail {

using Spectrum = std::vector<std::complex<double>>;

// Real-to-complex transform of n samples, returns modes 0..n/2, unnormalized.
Spectrum forward(std::span<const double> values);

// Inverse of forward(), including the 1/n factor.
std::vector<double> inverse(Spectrum spectrum, std::size_t n);

}  // namespace kdv::detail
