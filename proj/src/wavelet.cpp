#include "eegfeat/wavelet.hpp"

#include <algorithm>
#include <cmath>

#include "eegfeat/catalog.hpp"
#include "eegfeat/error.hpp"
#include "fft.hpp"

namespace eegfeat {

namespace {

const std::vector<double>& scaling_filter(Wavelet w) {
  static const std::vector<double> d4 = [] {
    const double s3 = std::sqrt(3.0), d = 4.0 * std::sqrt(2.0);
    return std::vector<double>{(1 + s3) / d, (3 + s3) / d, (3 - s3) / d,
                               (1 - s3) / d};
  }();
  static const std::vector<double> d8 = {
      0.23037781330885523,  0.7148465705525415,   0.6308807679295904,
      -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
      0.032883011666982945, -0.010597401784997278};
  return w == Wavelet::d4 ? d4 : d8;
}

// Half-point symmetric reflection: ... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} ...
std::size_t reflect(std::ptrdiff_t i, std::ptrdiff_t n) {
  const std::ptrdiff_t period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return static_cast<std::size_t>(i < n ? i : period - 1 - i);
}

}  // namespace

Wavelet parse_wavelet(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "d4" || s == "db2" || s == "daub4") return Wavelet::d4;
  if (s == "d8" || s == "db4" || s == "daub8") return Wavelet::d8;
  fail(ErrorCode::invalid_argument, "unknown wavelet '" + name + "' (expected D4 or D8)");
}

const char* to_string(Wavelet w) { return w == Wavelet::d4 ? "D4" : "D8"; }

FilterBank filter_bank(Wavelet w) {
  FilterBank fb;
  fb.rec_lo = scaling_filter(w);
  fb.dec_lo.assign(fb.rec_lo.rbegin(), fb.rec_lo.rend());
  fb.rec_hi.resize(fb.dec_lo.size());
  for (std::size_t k = 0; k < fb.dec_lo.size(); ++k) {
    fb.rec_hi[k] = (k % 2 == 0 ? 1.0 : -1.0) * fb.dec_lo[k];
  }
  fb.dec_hi.assign(fb.rec_hi.rbegin(), fb.rec_hi.rend());
  return fb;
}

std::vector<std::pair<std::string, std::span<const double>>>
WaveletDecomposition::bands() const {
  std::vector<std::pair<std::string, std::span<const double>>> out;
  for (std::size_t l = 0; l < details.size(); ++l) {
    out.emplace_back("D" + std::to_string(l + 1), details[l]);
  }
  out.emplace_back("A" + std::to_string(levels), approx);
  return out;
}

std::pair<std::vector<double>, std::vector<double>> dwt_step(
    std::span<const double> x, const FilterBank& fb) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto taps = static_cast<std::ptrdiff_t>(fb.dec_lo.size());
  const std::size_t out_len = static_cast<std::size_t>((n + taps - 1) / 2);
  std::vector<double> a(out_len, 0.0), d(out_len, 0.0);
  for (std::size_t o = 0; o < out_len; ++o) {
    const std::ptrdiff_t base = 2 * static_cast<std::ptrdiff_t>(o) + 1;
    double sa = 0.0, sd = 0.0;
    for (std::ptrdiff_t j = 0; j < taps; ++j) {
      const double v = x[reflect(base - j, n)];
      sa += fb.dec_lo[static_cast<std::size_t>(j)] * v;
      sd += fb.dec_hi[static_cast<std::size_t>(j)] * v;
    }
    a[o] = sa;
    d[o] = sd;
  }
  return {std::move(a), std::move(d)};
}

std::vector<double> idwt_step(std::span<const double> approx,
                              std::span<const double> detail,
                              const FilterBank& fb) {
  require(approx.size() == detail.size(),
          "approximation and detail lengths differ");
  const std::size_t taps = fb.rec_lo.size();
  const std::size_t half = taps / 2;
  const std::size_t n = approx.size();
  require(n >= half, "too few coefficients to reconstruct");
  std::vector<double> out(2 * n - taps + 2, 0.0);
  for (std::size_t i = half - 1, o = 0; i < n; ++i, o += 2) {
    double even = 0.0, odd = 0.0;
    for (std::size_t j = 0; j < half; ++j) {
      even += fb.rec_lo[2 * j] * approx[i - j] + fb.rec_hi[2 * j] * detail[i - j];
      odd += fb.rec_lo[2 * j + 1] * approx[i - j] + fb.rec_hi[2 * j + 1] * detail[i - j];
    }
    out[o] += even;
    out[o + 1] += odd;
  }
  return out;
}

WaveletDecomposition dwt(std::span<const double> x, Wavelet w, int levels) {
  require(levels >= 1, "wavelet levels must be >= 1");
  require(levels < 31, "wavelet levels must be < 31");
  if (x.size() < (std::size_t{1} << levels)) {
    fail(ErrorCode::invalid_argument,
         "signal of " + std::to_string(x.size()) + " samples is too short for " +
             std::to_string(levels) + " decomposition levels");
  }
  const auto fb = filter_bank(w);
  WaveletDecomposition out;
  out.levels = levels;
  out.wavelet = w;
  out.signal_length = x.size();
  std::vector<double> current(x.begin(), x.end());
  for (int l = 0; l < levels; ++l) {
    auto [a, d] = dwt_step(current, fb);
    out.details.push_back(std::move(d));
    current = std::move(a);
  }
  out.approx = std::move(current);
  return out;
}

std::vector<double> idwt(const WaveletDecomposition& decomp) {
  require(decomp.levels >= 1 &&
              decomp.details.size() == static_cast<std::size_t>(decomp.levels),
          "malformed wavelet decomposition");
  const auto fb = filter_bank(decomp.wavelet);
  std::vector<double> a = decomp.approx;
  for (int l = decomp.levels - 1; l >= 0; --l) {
    const auto& d = decomp.details[static_cast<std::size_t>(l)];
    if (a.size() == d.size() + 1) a.pop_back();
    a = idwt_step(a, d, fb);
  }
  require(a.size() >= decomp.signal_length, "reconstruction is too short");
  a.resize(decomp.signal_length);
  return a;
}

Spectrogram stft_spectrogram(std::span<const double> x, double fs,
                             std::size_t win_len, std::size_t hop) {
  require(fs > 0.0, "sampling rate must be > 0");
  require(win_len >= 2 && win_len <= x.size(),
          "STFT window must be in [2, N] samples");
  require(hop >= 1, "STFT hop must be >= 1");
  const auto window = detail::hamming_window(win_len);
  detail::RealFft fft(win_len);
  Spectrogram s;
  for (std::size_t k = 0; k < fft.bins(); ++k) {
    s.freqs.push_back(static_cast<double>(k) * fs / static_cast<double>(win_len));
  }
  std::vector<double> seg(win_len), pw(fft.bins());
  for (std::size_t start = 0; start + win_len <= x.size(); start += hop) {
    for (std::size_t i = 0; i < win_len; ++i) seg[i] = x[start + i] * window[i];
    fft.power(seg, pw);
    s.times.push_back((static_cast<double>(start) + 0.5 * static_cast<double>(win_len)) / fs);
    for (double p : pw) s.magnitude.push_back(std::sqrt(p));
  }
  return s;
}

std::vector<std::string> default_subband_features() {
  return {"Mean", "AbsMean", "Variance", "Skewness", "Kurtosis",
          "Max",  "Min",     "Energy",   "LineLength"};
}

std::vector<NamedValue> subband_features(const WaveletDecomposition& decomp,
                                         const std::vector<std::string>& features) {
  std::vector<NamedValue> out;
  const FeatureParams params;
  for (const auto& [band, coeffs] : decomp.bands()) {
    if (coeffs.size() < 2) {
      fail(ErrorCode::invalid_argument,
           "sub-band " + band + " has fewer than 2 coefficients");
    }
    const auto values = time_features(features, coeffs, params);
    for (std::size_t i = 0; i < features.size(); ++i) {
      out.push_back({features[i] + band, values[i]});
    }
  }
  return out;
}

}  // namespace eegfeat
