#include "eegfeat/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "eegfeat/error.hpp"
#include "fft.hpp"

namespace eegfeat {

namespace {

void require_power(const Psd& psd, const char* what) {
  if (!(psd.total_power > 0.0)) {
    fail(ErrorCode::undefined_result,
         std::string(what) + " is undefined for a zero-power spectrum");
  }
}

}  // namespace

std::vector<double> Psd::normalized() const {
  require_power(*this, "normalized PSD");
  std::vector<double> p(power.size());
  for (std::size_t k = 0; k < power.size(); ++k) p[k] = power[k] / total_power;
  return p;
}

Psd make_psd(std::vector<double> freqs, std::vector<double> power) {
  require(freqs.size() == power.size() && freqs.size() >= 2,
          "PSD needs matching frequency and power grids of >= 2 bins");
  require(freqs.front() >= 0.0, "PSD frequencies must start at >= 0");
  for (std::size_t k = 1; k < freqs.size(); ++k) {
    require(freqs[k] > freqs[k - 1], "PSD frequencies must be strictly increasing");
  }
  Psd psd{std::move(freqs), std::move(power), 0.0};
  for (double p : psd.power) {
    require(p >= 0.0 && std::isfinite(p), "PSD power must be finite and >= 0");
    psd.total_power += p;
  }
  return psd;
}

Psd psd_welch(std::span<const double> x, double fs, const WelchConfig& cfg) {
  require(fs > 0.0, "sampling rate must be > 0");
  require(cfg.segment >= 2, "Welch segment must be >= 2 samples");
  require(cfg.overlap >= 0.0 && cfg.overlap < 1.0, "Welch overlap must be in [0, 1)");
  if (x.size() < cfg.segment) {
    fail(ErrorCode::invalid_argument,
         "Welch PSD needs at least " + std::to_string(cfg.segment) +
             " samples, got " + std::to_string(x.size()));
  }
  const std::size_t n = cfg.segment;
  const auto step = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * (1.0 - cfg.overlap))));
  const auto window = detail::hamming_window(n);
  double w2 = 0.0;
  for (double w : window) w2 += w * w;

  detail::RealFft fft(n);
  std::vector<double> seg(n), pw(fft.bins()), acc(fft.bins(), 0.0);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + n <= x.size(); start += step) {
    for (std::size_t i = 0; i < n; ++i) seg[i] = x[start + i] * window[i];
    fft.power(seg, pw);
    for (std::size_t k = 0; k < pw.size(); ++k) acc[k] += pw[k];
    ++segments;
  }
  std::vector<double> freqs(fft.bins()), power(fft.bins());
  const double scale = 1.0 / (static_cast<double>(segments) * static_cast<double>(n) * w2);
  for (std::size_t k = 0; k < fft.bins(); ++k) {
    freqs[k] = static_cast<double>(k) * fs / static_cast<double>(n);
    const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
    power[k] = acc[k] * scale * (unpaired ? 1.0 : 2.0);
  }
  return make_psd(std::move(freqs), std::move(power));
}

std::vector<Band> default_bands() {
  return {{"Delta", 0.5, 4.0},
          {"Theta", 4.0, 8.0},
          {"Alpha", 8.0, 13.0},
          {"Beta", 13.0, 30.0},
          {"Gamma", 30.0, 50.0}};
}

double band_energy(const Psd& psd, double lo_hz, double hi_hz) {
  require(lo_hz >= 0.0 && hi_hz > lo_hz, "band needs 0 <= lo < hi");
  const double top = psd.freqs.back();
  double e = 0.0;
  std::size_t bins = 0;
  for (std::size_t k = 0; k < psd.freqs.size(); ++k) {
    const double f = psd.freqs[k];
    if (f >= lo_hz && (f < hi_hz || (f == top && hi_hz >= top))) {
      e += psd.power[k];
      ++bins;
    }
  }
  if (bins == 0) {
    fail(ErrorCode::invalid_argument,
         "band [" + std::to_string(lo_hz) + ", " + std::to_string(hi_hz) +
             ") contains no frequency bins");
  }
  return e;
}

double iwmf(const Psd& psd) {
  const auto p = psd.normalized();
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m += p[k] * psd.freqs[k];
  return m;
}

double iwbw(const Psd& psd) {
  const auto p = psd.normalized();
  const double m = iwmf(psd);
  double v = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    v += p[k] * (psd.freqs[k] - m) * (psd.freqs[k] - m);
  }
  return std::sqrt(v);
}

double sef(const Psd& psd, double alpha) {
  require(alpha > 0.0 && alpha <= 100.0, "SEF percentage must be in (0, 100]");
  const auto p = psd.normalized();
  const double target = alpha / 100.0 - 1e-12;
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    cum += p[k];
    if (p[k] > 0.0) last_nonzero = k;
    if (cum >= target) return psd.freqs[k];
  }
  return psd.freqs[last_nonzero];
}

double spectral_entropy(const Psd& psd) {
  double h = 0.0;
  for (double v : psd.normalized()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

SpectralPeak peak_frequency(const Psd& psd) {
  require_power(psd, "peak frequency");
  const auto& p = psd.power;
  const auto& f = psd.freqs;
  const std::size_t n = p.size();

  std::vector<std::size_t> peaks;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (p[k] > p[k - 1] && p[k] >= p[k + 1]) peaks.push_back(k);
  }
  if (peaks.empty()) {
    peaks.push_back(static_cast<std::size_t>(
        std::max_element(p.begin(), p.end()) - p.begin()));
  }

  SpectralPeak best;
  double best_avg = -1.0;
  for (std::size_t k : peaks) {
    const double half = 0.5 * p[k];
    // Walk outwards to the first bin below half maximum and interpolate the
    // crossing; a walk that reaches the grid edge is clipped there.
    double f_lo = f.front();
    for (std::size_t j = k; j > 0; --j) {
      if (p[j - 1] < half) {
        f_lo = f[j - 1] + (half - p[j - 1]) / (p[j] - p[j - 1]) * (f[j] - f[j - 1]);
        break;
      }
    }
    double f_hi = f.back();
    for (std::size_t j = k; j + 1 < n; ++j) {
      if (p[j + 1] < half) {
        f_hi = f[j] + (p[j] - half) / (p[j] - p[j + 1]) * (f[j + 1] - f[j]);
        break;
      }
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (f[j] >= f_lo && f[j] <= f_hi) {
        sum += p[j];
        ++count;
      }
    }
    const double avg = count > 0 ? sum / static_cast<double>(count) : p[k];
    if (avg > best_avg) {
      best_avg = avg;
      best = {f[k], f_hi - f_lo, p[k]};
    }
  }
  return best;
}

double power_ratio(double current_band_power, double background_band_power) {
  if (!(background_band_power > 0.0)) {
    fail(ErrorCode::undefined_result, "power ratio needs background power > 0");
  }
  return current_band_power / background_band_power;
}

double power_ratio(const Psd& current, const Psd& background, double lo_hz,
                   double hi_hz) {
  return power_ratio(band_energy(current, lo_hz, hi_hz),
                     band_energy(background, lo_hz, hi_hz));
}

double background_band_power(std::span<const double> history, std::size_t k) {
  require(!history.empty() && k > 0, "background needs at least one epoch");
  const auto tail = history.subspan(history.size() - std::min(k, history.size()));
  std::vector<double> v(tail.begin(), tail.end());
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace eegfeat
