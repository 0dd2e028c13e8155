#include "kdv/detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace kdv::detail {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per size under a lock and reused with
// caller-owned buffers (FFTW_UNALIGNED allows std::vector storage).
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.r2c);
      fftw_destroy_plan(plans.c2r);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.r2c = fftw_plan_dft_r2c_1d(size, real.data(),
                                     reinterpret_cast<fftw_complex*>(cplx.data()), flags);
    plans.c2r = fftw_plan_dft_c2r_1d(size, reinterpret_cast<fftw_complex*>(cplx.data()),
                                     real.data(), flags);
    plans_.emplace(n, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

Spectrum forward(std::span<const double> values) {
  const std::size_t n = values.size();
  Spectrum out(n / 2 + 1);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(cache().get(n).r2c, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse(Spectrum spectrum, std::size_t n) {
  std::vector<double> out(n);
  fftw_execute_dft_c2r(cache().get(n).c2r, reinterpret_cast<fftw_complex*>(spectrum.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace kdv::detail
