#include "fft.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "eegfeat/error.hpp"

namespace eegfeat::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  require(n >= 2, "FFT length must be >= 2");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_alloc_real(n_);
  auto* out = fftw_alloc_complex(bins());
  out_ = out;
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), in_, out, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::power(std::span<const double> in, std::span<double> out) {
  require(in.size() == n_ && out.size() == bins(), "FFT buffer size mismatch");
  std::copy(in.begin(), in.end(), in_);
  fftw_execute(static_cast<fftw_plan>(plan_));
  const auto* c = static_cast<const fftw_complex*>(out_);
  for (std::size_t k = 0; k < bins(); ++k) {
    out[k] = c[k][0] * c[k][0] + c[k][1] * c[k][1];
  }
}

std::vector<double> hamming_window(std::size_t n) {
  // Periodic (DFT-even) form.
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n));
  }
  return w;
}

}  // namespace eegfeat::detail
