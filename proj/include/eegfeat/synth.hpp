#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegfeat/signal.hpp"

namespace eegfeat {

// Synthetic recording: every channel carries independent band-limited
// Gaussian noise of RMS `background_rms`. Inside seizure intervals each
// channel adds a sinusoid at a random frequency in [rhythm_lo_hz,
// rhythm_hi_hz] with RMS background_rms * sqrt(k^2 - 1), so the total RMS
// grows by the factor k and k = 1 leaves the signal unchanged in law.
struct SynthSpec {
  double duration_s = 600.0;
  double fs = 256.0;
  double background_rms = 20.0;
  double noise_lo_hz = 0.5;
  double noise_hi_hz = 30.0;
  double amplitude_factor = 4.0;
  double rhythm_lo_hz = 3.0;
  double rhythm_hi_hz = 8.0;
  std::vector<Interval> seizures = {{120.0, 180.0}, {400.0, 460.0}};
  std::vector<std::string> channels = [] {
    const auto m = default_montage();
    std::vector<std::string> c = m.left;
    c.insert(c.end(), m.right.begin(), m.right.end());
    return c;
  }();
  std::uint64_t seed = 1;

  void validate() const;
};

Record synth_record(const SynthSpec& spec);

}  // namespace eegfeat
