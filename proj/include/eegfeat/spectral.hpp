#pragma once

#include <span>
#include <string>
#include <vector>

namespace eegfeat {

// One-sided power spectrum. `power[k]` is the power in bin k (density times
// bin width), so total_power approximates the signal mean square.
struct Psd {
  std::vector<double> freqs;
  std::vector<double> power;
  double total_power = 0.0;

  double bin_width() const { return freqs.size() > 1 ? freqs[1] - freqs[0] : 0.0; }
  // Power divided by total power; throws when total power is zero.
  std::vector<double> normalized() const;
};

// Validates the Psd invariants (increasing grid from 0, non-negative power)
// and fills total_power.
Psd make_psd(std::vector<double> freqs, std::vector<double> power);

struct WelchConfig {
  std::size_t segment = 256;
  double overlap = 0.5;
};

// Hamming-windowed Welch average, no detrending.
Psd psd_welch(std::span<const double> x, double fs, const WelchConfig& cfg = {});

struct Band {
  std::string name;
  double lo_hz;
  double hi_hz;
};

// delta, theta, alpha, beta, gamma.
std::vector<Band> default_bands();

// Sum of power over bins with lo <= f < hi; the top bin of the grid is
// included when hi reaches it.
double band_energy(const Psd& psd, double lo_hz, double hi_hz);

double iwmf(const Psd& psd);
double iwbw(const Psd& psd);
// Smallest grid frequency whose cumulative normalized power reaches alpha%.
double sef(const Psd& psd, double alpha);
inline double median_frequency(const Psd& psd) { return sef(psd, 50.0); }
double spectral_entropy(const Psd& psd);

struct SpectralPeak {
  double frequency = 0.0;
  double bandwidth = 0.0;  // full width at half maximum, Hz
  double amplitude = 0.0;  // power at the peak bin
};

// Among local maxima, the one whose FWHM band has the highest average power.
SpectralPeak peak_frequency(const Psd& psd);

double power_ratio(const Psd& current, const Psd& background, double lo_hz,
                   double hi_hz);
double power_ratio(double current_band_power, double background_band_power);

inline constexpr std::size_t kBackgroundEpochs = 30;

// Median of the last `k` entries of `history` (all of them when fewer).
double background_band_power(std::span<const double> history,
                             std::size_t k = kBackgroundEpochs);

}  // namespace eegfeat
