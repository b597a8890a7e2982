#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eegfeat {

// Orthogonal Daubechies filters: D4 is the 4-tap filter (two vanishing
// moments, "db2" in PyWavelets naming), D8 the 8-tap one ("db4").
enum class Wavelet { d4, d8 };

Wavelet parse_wavelet(const std::string& name);
const char* to_string(Wavelet w);

// Decomposition filter taps (low-pass, high-pass) and reconstruction taps.
struct FilterBank {
  std::vector<double> dec_lo, dec_hi, rec_lo, rec_hi;
};
FilterBank filter_bank(Wavelet w);

struct WaveletDecomposition {
  std::vector<std::vector<double>> details;  // D1 (finest) .. DL
  std::vector<double> approx;                // A_L
  int levels = 0;
  Wavelet wavelet = Wavelet::d4;
  std::size_t signal_length = 0;

  // "D1".."DL" then "A<L>", paired with the coefficient sequences.
  std::vector<std::pair<std::string, std::span<const double>>> bands() const;
};

// Mallat cascade with symmetric half-point extension. Each level emits
// floor((n + F - 1) / 2) coefficients per branch for an n-sample input.
WaveletDecomposition dwt(std::span<const double> x, Wavelet w = Wavelet::d4,
                         int levels = 5);

// Inverse of dwt(); reconstructs the original signal_length samples.
std::vector<double> idwt(const WaveletDecomposition& decomp);

// Single-level steps, exposed for testing.
std::pair<std::vector<double>, std::vector<double>> dwt_step(
    std::span<const double> x, const FilterBank& fb);
std::vector<double> idwt_step(std::span<const double> approx,
                              std::span<const double> detail,
                              const FilterBank& fb);

struct Spectrogram {
  std::vector<double> times;      // frame centres, s
  std::vector<double> freqs;      // Hz
  std::vector<double> magnitude;  // row-major, times.size() x freqs.size()

  double at(std::size_t t, std::size_t f) const {
    return magnitude[t * freqs.size() + f];
  }
};

// Hamming-windowed one-sided magnitude STFT.
Spectrogram stft_spectrogram(std::span<const double> x, double fs,
                             std::size_t win_len, std::size_t hop);

// Statistics computed per sub-band in the default experiment set.
std::vector<std::string> default_subband_features();

struct NamedValue {
  std::string name;
  double value;
};

// For every band and every requested time-domain feature, the feature value
// named <Feature><Band> (e.g. EnergyD1). Values are computed by the same
// time-domain functions used on raw epochs.
std::vector<NamedValue> subband_features(
    const WaveletDecomposition& decomp,
    const std::vector<std::string>& features = default_subband_features());

}  // namespace eegfeat
