#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eegfeat/catalog.hpp"
#include "eegfeat/error.hpp"
#include "eegfeat/time_features.hpp"
#include "eegfeat/wavelet.hpp"
#include "oracles.hpp"

using namespace eegfeat;
using doctest::Approx;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

double total_energy(const WaveletDecomposition& w) {
  double e = 0.0;
  for (const auto& [name, c] : w.bands()) e += energy(c);
  return e;
}

// Direct convolution of the analysis filters against a periodic-free
// interior: coefficient o uses x[2o+1-j] for taps j.
std::vector<double> interior_detail(const std::vector<double>& x, const std::vector<double>& hi) {
  std::vector<double> out;
  for (std::size_t o = hi.size(); 2 * o + 1 < x.size(); ++o) {
    double acc = 0.0;
    for (std::size_t j = 0; j < hi.size(); ++j) acc += hi[j] * x[2 * o + 1 - j];
    out.push_back(acc);
  }
  return out;
}

}  // namespace

TEST_CASE("filter banks are orthonormal") {
  for (auto w : {Wavelet::d4, Wavelet::d8}) {
    const auto fb = filter_bank(w);
    const std::size_t n = fb.dec_lo.size();
    CHECK(n == (w == Wavelet::d4 ? 4u : 8u));
    double s = 0.0, e = 0.0;
    for (double v : fb.rec_lo) {
      s += v;
      e += v * v;
    }
    CHECK(s == Approx(std::sqrt(2.0)));
    CHECK(e == Approx(1.0));
    for (std::size_t shift = 2; shift < n; shift += 2) {
      double dot = 0.0;
      for (std::size_t k = 0; k + shift < n; ++k) dot += fb.rec_lo[k] * fb.rec_lo[k + shift];
      CHECK(std::fabs(dot) < 1e-12);
    }
  }
  const auto d4 = filter_bank(Wavelet::d4);
  const double r3 = std::sqrt(3.0), den = 4.0 * std::sqrt(2.0);
  CHECK(d4.rec_lo[0] == Approx((1 + r3) / den));
  CHECK(d4.rec_lo[3] == Approx((1 - r3) / den));
  CHECK(parse_wavelet("db2") == Wavelet::d4);
  CHECK(parse_wavelet("D8") == Wavelet::d8);
  CHECK_THROWS_AS(parse_wavelet("haar"), Error);
}

TEST_CASE("perfect reconstruction") {
  for (auto w : {Wavelet::d4, Wavelet::d8}) {
    for (std::size_t n : {1024u, 1000u, 777u, 64u}) {
      const auto x = oracle::gaussian(n, n + static_cast<int>(w));
      const auto d = dwt(x, w, 5);
      CHECK(d.details.size() == 5);
      CHECK(max_abs_diff(idwt(d), x) < 1e-8);
    }
  }
}

TEST_CASE("coefficient lengths follow floor((n + F - 1) / 2)") {
  const auto d = dwt(oracle::gaussian(1024, 1), Wavelet::d4, 5);
  std::size_t n = 1024;
  for (const auto& det : d.details) {
    n = (n + 3) / 2;
    CHECK(det.size() == n);
  }
  CHECK(d.approx.size() == n);
  CHECK_THROWS_AS(dwt(oracle::gaussian(31, 1), Wavelet::d4, 5), Error);
}

TEST_CASE("vanishing moments: ramp interior details vanish") {
  std::vector<double> ramp(1024);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.5 * static_cast<double>(i) - 100.0;
  for (auto w : {Wavelet::d4, Wavelet::d8}) {
    const auto d = dwt(ramp, w, 5);
    const std::size_t f = filter_bank(w).dec_lo.size();
    for (const auto& det : d.details) {
      if (det.size() <= 2 * f) continue;
      for (std::size_t i = f; i + f < det.size(); ++i) CHECK(std::fabs(det[i]) < 1e-9);
    }
  }
  const auto fb = filter_bank(Wavelet::d4);
  const auto direct = interior_detail(ramp, fb.dec_hi);
  for (double v : direct) CHECK(std::fabs(v) < 1e-9);
}

TEST_CASE("energy: impulse, scaling, constant") {
  std::vector<double> imp(1024, 0.0);
  imp[500] = 3.0;
  CHECK(std::fabs(total_energy(dwt(imp, Wavelet::d4, 5)) - 9.0) < 1e-9);
  CHECK(std::fabs(total_energy(dwt(imp, Wavelet::d8, 5)) - 9.0) < 1e-9);

  const auto x = oracle::gaussian(1024, 12);
  std::vector<double> x3(x);
  for (auto& v : x3) v *= 3.0;
  const auto da = dwt(x, Wavelet::d4, 5), db = dwt(x3, Wavelet::d4, 5);
  const auto a = da.bands(), b = db.bands();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(energy(b[i].second) == Approx(9.0 * energy(a[i].second)));

  const auto c = dwt(std::vector<double>(1024, 2.0), Wavelet::d4, 5);
  for (const auto& det : c.details)
    for (double v : det) CHECK(std::fabs(v) < 1e-9);
  CHECK(energy(c.approx) > 0.0);
}

TEST_CASE("energy partition on tapered epochs") {
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    auto x = oracle::gaussian(1024, 300 + s);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] *= 0.5 - 0.5 * std::cos(2 * std::numbers::pi * i / (x.size() - 1));
    }
    const double ex = energy(x);
    worst = std::max(worst, std::fabs(total_energy(dwt(x, Wavelet::d4, 5)) - ex) / ex);
  }
  CHECK(worst < 0.01);
}

TEST_CASE("sub-band features delegate to time-domain functions") {
  const auto x = oracle::gaussian(1024, 21);
  const auto d = dwt(x, Wavelet::d4, 5);
  const auto feats = subband_features(d);
  const auto names = default_subband_features();
  REQUIRE(feats.size() == names.size() * 6);
  CHECK(feats.front().name == "MeanD1");
  CHECK(feats.back().name == "LineLengthA5");
  const FeatureParams params;
  std::size_t i = 0;
  for (const auto& [band, coeffs] : d.bands()) {
    for (const auto& n : names) {
      CHECK(feats[i].name == n + band);
      CHECK(feats[i].value == time_feature(n, coeffs, params));
      ++i;
    }
  }
}

TEST_CASE("STFT spectrogram") {
  std::vector<double> tone(2048), chirp(4096);
  for (std::size_t i = 0; i < tone.size(); ++i) tone[i] = std::sin(2 * std::numbers::pi * 10 * i / 256.0);
  const auto s = stft_spectrogram(tone, 256.0, 256, 128);
  REQUIRE(s.times.size() == 15);
  REQUIRE(s.freqs.size() == 129);
  for (std::size_t t = 0; t < s.times.size(); ++t) {
    std::size_t best = 0;
    for (std::size_t f = 0; f < s.freqs.size(); ++f)
      if (s.at(t, f) > s.at(t, best)) best = f;
    CHECK(std::fabs(s.freqs[best] - 10.0) <= 1.0);
  }
  const auto z = stft_spectrogram(std::vector<double>(512, 0.0), 256.0, 128, 64);
  CHECK(std::all_of(z.magnitude.begin(), z.magnitude.end(), [](double v) { return v == 0.0; }));

  double phase = 0.0;
  for (std::size_t i = 0; i < chirp.size(); ++i) {
    const double f = 5.0 + 60.0 * static_cast<double>(i) / chirp.size();
    phase += 2 * std::numbers::pi * f / 256.0;
    chirp[i] = std::sin(phase);
  }
  const auto c = stft_spectrogram(chirp, 256.0, 256, 256);
  std::size_t prev = 0;
  for (std::size_t t = 0; t < c.times.size(); ++t) {
    std::size_t best = 0;
    for (std::size_t f = 0; f < c.freqs.size(); ++f)
      if (c.at(t, f) > c.at(t, best)) best = f;
    CHECK(best >= prev);
    prev = best;
  }
  CHECK_THROWS_AS(stft_spectrogram(tone, 256.0, 4096, 1), Error);
  CHECK_THROWS_AS(stft_spectrogram(tone, 256.0, 256, 0), Error);
}
