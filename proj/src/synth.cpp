#include "eegfeat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eegfeat/error.hpp"

namespace eegfeat {

namespace {

constexpr std::size_t kTaps = 257;

// Hamming-windowed sinc band-pass with unit gain at the band centre.
std::vector<double> bandpass_taps(double fs, double lo_hz, double hi_hz) {
  std::vector<double> h(kTaps);
  const double half = static_cast<double>(kTaps - 1) / 2.0;
  auto lowpass = [&](double fc, double t) {
    const double w = 2.0 * fc / fs;
    if (t == 0.0) return w;
    return std::sin(std::numbers::pi * w * t) / (std::numbers::pi * t);
  };
  for (std::size_t i = 0; i < kTaps; ++i) {
    const double t = static_cast<double>(i) - half;
    const double win =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(kTaps - 1));
    h[i] = (lowpass(hi_hz, t) - lowpass(lo_hz, t)) * win;
  }
  return h;
}

std::vector<double> band_limited_noise(std::size_t n, const std::vector<double>& taps,
                                       double rms, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> w(n + taps.size() - 1);
  for (auto& v : w) v = gauss(rng);
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k) acc += taps[k] * w[i + k];
    y[i] = acc;
  }
  double ss = 0.0;
  for (double v : y) ss += v * v;
  const double scale = rms / std::sqrt(ss / static_cast<double>(n));
  for (auto& v : y) v *= scale;
  return y;
}

}  // namespace

void SynthSpec::validate() const {
  require(fs > 0.0 && duration_s > 0.0, "synthetic duration and rate must be > 0");
  require(duration_s * fs >= 2.0, "synthetic record needs at least two samples");
  require(background_rms > 0.0, "background RMS must be > 0");
  require(noise_lo_hz >= 0.0 && noise_hi_hz > noise_lo_hz && noise_hi_hz < fs / 2.0,
          "noise band must satisfy 0 <= lo < hi < fs/2");
  require(amplitude_factor >= 1.0, "seizure amplitude factor must be >= 1");
  require(rhythm_lo_hz > 0.0 && rhythm_hi_hz >= rhythm_lo_hz && rhythm_hi_hz < fs / 2.0,
          "seizure rhythm band must satisfy 0 < lo <= hi < fs/2");
  require(!channels.empty(), "synthetic record needs at least one channel");
  for (const auto& s : seizures) {
    require(s.start_s >= 0.0 && s.end_s > s.start_s && s.end_s <= duration_s,
            "seizure intervals must lie inside the record");
  }
}

Record synth_record(const SynthSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.fs));
  const auto taps = bandpass_taps(spec.fs, spec.noise_lo_hz, spec.noise_hi_hz);
  const auto seizures = normalize_intervals(spec.seizures);
  const double burst_amp =
      spec.background_rms *
      std::sqrt(2.0 * (spec.amplitude_factor * spec.amplitude_factor - 1.0));

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> freq(spec.rhythm_lo_hz, spec.rhythm_hi_hz);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  std::vector<std::vector<double>> data;
  data.reserve(spec.channels.size());
  for (std::size_t c = 0; c < spec.channels.size(); ++c) {
    auto x = band_limited_noise(n, taps, spec.background_rms, rng);
    for (const auto& s : seizures) {
      const double f = freq(rng), ph = phase(rng);
      const auto i0 = static_cast<std::size_t>(std::ceil(s.start_s * spec.fs));
      const auto i1 = std::min(n, static_cast<std::size_t>(std::ceil(s.end_s * spec.fs)));
      for (std::size_t i = i0; i < i1; ++i) {
        const double t = static_cast<double>(i) / spec.fs;
        x[i] += burst_amp * std::sin(2.0 * std::numbers::pi * f * t + ph);
      }
    }
    data.push_back(std::move(x));
  }
  return Record(spec.channels, std::move(data), spec.fs, seizures);
}

}  // namespace eegfeat
