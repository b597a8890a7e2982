#pragma once

#include <complex>
#include <span>
#include <vector>

namespace eegfeat::detail {

// Real-input forward DFT of fixed length, returning the n/2 + 1 one-sided
// bins. Plan construction is serialized internally; execute() may be called
// concurrently on distinct instances.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  // Returns |X[k]|^2 for k in [0, n/2].
  void power(std::span<const double> in, std::span<double> out);

 private:
  std::size_t n_;
  double* in_;
  void* out_;
  void* plan_;
};

std::vector<double> hamming_window(std::size_t n);

}  // namespace eegfeat::detail
