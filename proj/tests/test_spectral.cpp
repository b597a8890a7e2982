#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eegfeat/error.hpp"
#include "eegfeat/spectral.hpp"
#include "oracles.hpp"

using namespace eegfeat;
using doctest::Approx;

namespace {

std::vector<double> tone(double hz, double amp = 1.0, std::size_t n = 1024, double fs = 256.0,
                         double phase = 0.3) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amp * std::sin(2 * std::numbers::pi * hz * static_cast<double>(i) / fs + phase);
  }
  return x;
}

Psd grid_psd(std::vector<double> power) {
  std::vector<double> f(power.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = static_cast<double>(k);
  return make_psd(f, std::move(power));
}

std::size_t argmax(const Psd& p) {
  return static_cast<std::size_t>(std::max_element(p.power.begin(), p.power.end()) -
                                  p.power.begin());
}

}  // namespace

TEST_CASE("Welch PSD") {
  const auto p = psd_welch(tone(10.0), 256.0);
  REQUIRE(p.freqs.size() == 129);
  CHECK(p.freqs.front() == 0.0);
  CHECK(p.freqs.back() == 128.0);
  CHECK(std::fabs(p.freqs[argmax(p)] - 10.0) <= p.bin_width());
  // one-sided power sums to the mean square (0.5 for a unit sine)
  CHECK(p.total_power == Approx(0.5).epsilon(0.02));

  double mean_ratio = 0.0;
  for (int s = 0; s < 10; ++s) {
    const auto w = psd_welch(oracle::gaussian(1024, 50 + s), 256.0);
    std::vector<double> inner(w.power.begin() + 1, w.power.end() - 1);
    std::nth_element(inner.begin(), inner.begin() + inner.size() / 2, inner.end());
    mean_ratio += *std::max_element(w.power.begin(), w.power.end()) / inner[inner.size() / 2] / 10;
  }
  CHECK(mean_ratio < 5.0);

  const auto z = psd_welch(std::vector<double>(512, 0.0), 256.0);
  CHECK(z.total_power == 0.0);
  CHECK_THROWS_AS(iwmf(z), Error);
  CHECK_THROWS_AS(spectral_entropy(z), Error);
  CHECK_THROWS_AS(sef(z, 50.0), Error);
  CHECK_THROWS_AS(peak_frequency(z), Error);
  CHECK_THROWS_AS(psd_welch(std::vector<double>(255, 1.0), 256.0), Error);
}

TEST_CASE("band energy") {
  const auto p = psd_welch(oracle::gaussian(2048, 3), 256.0);
  CHECK(band_energy(p, 0.0, 128.0) == Approx(p.total_power).epsilon(1e-12));
  const double parts = band_energy(p, 0.0, 4.0) + band_energy(p, 4.0, 30.0) +
                       band_energy(p, 30.0, 64.0) + band_energy(p, 64.0, 128.0);
  CHECK(std::fabs(parts - p.total_power) <= 1e-9 * p.total_power);
  const auto t = psd_welch(tone(10.0), 256.0);
  CHECK(band_energy(t, 8.0, 12.0) / t.total_power >= 0.9);
  CHECK_THROWS_AS(band_energy(t, 10.2, 10.5), Error);
  CHECK_THROWS_AS(band_energy(t, 12.0, 8.0), Error);
}

TEST_CASE("IWMF, IWBW, SEF, SE on constructed spectra") {
  const auto point = grid_psd({0, 0, 0, 5, 0, 0, 0, 0});
  CHECK(iwmf(point) == 3.0);
  CHECK(iwbw(point) == 0.0);
  CHECK(sef(point, 10.0) == 3.0);
  CHECK(sef(point, 90.0) == 3.0);
  CHECK(spectral_entropy(point) == 0.0);
  CHECK(peak_frequency(point).frequency == 3.0);
  CHECK(peak_frequency(point).bandwidth <= point.bin_width());

  const auto pair = grid_psd({0, 2, 0, 0, 0, 2, 0});
  CHECK(iwmf(pair) == Approx(3.0));
  CHECK(iwbw(pair) == Approx(2.0));

  const auto uniform = grid_psd(std::vector<double>(9, 1.0));
  CHECK(iwmf(uniform) == Approx(4.0));
  CHECK(spectral_entropy(uniform) == Approx(std::log(9.0)));
  const auto uniform8 = grid_psd({1, 1, 1, 1, 1, 1, 1, 1, 0});
  CHECK(sef(uniform8, 50.0) == 3.0);
  CHECK(sef(uniform8, 100.0) == 7.0);
  CHECK(median_frequency(uniform8) == sef(uniform8, 50.0));

  const auto narrow = grid_psd({0, 1, 4, 1, 0, 0, 0});
  const auto wide = grid_psd({1, 1, 2, 1, 1, 1, 0});
  CHECK(iwbw(narrow) < iwbw(wide));

  const auto p = psd_welch(oracle::gaussian(1024, 9), 256.0);
  double prev = 0.0;
  for (double a = 5.0; a <= 100.0; a += 5.0) {
    const double s = sef(p, a);
    CHECK(s >= prev);
    prev = s;
  }
  const double m = iwmf(p);
  CHECK(m >= 0.0);
  CHECK(m <= 128.0);
  double sum = 0.0;
  for (double v : p.normalized()) sum += v;
  CHECK(sum == Approx(1.0));
}

TEST_CASE("spectral entropy ordering and peaks") {
  CHECK(spectral_entropy(psd_welch(tone(10.0), 256.0)) <
        spectral_entropy(psd_welch(oracle::gaussian(1024, 1), 256.0)));
  const auto single = psd_welch(tone(10.0), 256.0);
  CHECK(std::fabs(peak_frequency(single).frequency - 10.0) <= 1.0);
  std::vector<double> two = tone(10.0, 2.0);
  const auto t30 = tone(30.0, 1.0);
  for (std::size_t i = 0; i < two.size(); ++i) two[i] += t30[i];
  CHECK(peak_frequency(psd_welch(two, 256.0)).frequency == Approx(10.0));
  const auto mono = grid_psd({5, 4, 3, 2, 1});
  CHECK(peak_frequency(mono).frequency == 0.0);
}

TEST_CASE("power ratio and background") {
  const auto p = psd_welch(oracle::gaussian(1024, 2), 256.0);
  CHECK(power_ratio(p, p, 4.0, 8.0) == Approx(1.0));
  std::vector<double> doubled = p.power;
  for (auto& v : doubled) v *= 2.0;
  CHECK(power_ratio(make_psd(p.freqs, doubled), p, 4.0, 8.0) == Approx(2.0));

  const auto base = oracle::gaussian(1024, 4);
  std::vector<double> loud(base);
  for (auto& v : loud) v *= 2.0;
  CHECK(power_ratio(psd_welch(loud, 256.0), psd_welch(base, 256.0), 0.5, 30.0) == Approx(4.0));

  CHECK(background_band_power(std::vector<double>{5, 1, 3}) == 3.0);
  std::vector<double> hist;
  for (int i = 0; i < 40; ++i) hist.push_back(i < 10 ? 1000.0 : static_cast<double>(i));
  CHECK(background_band_power(hist, 30) == Approx(24.5));
  CHECK_THROWS_AS(power_ratio(1.0, 0.0), Error);
  CHECK_THROWS_AS(make_psd({0, 1, 1}, {1, 1, 1}), Error);
  CHECK_THROWS_AS(make_psd({0, 1, 2}, {1, -1, 1}), Error);
}
