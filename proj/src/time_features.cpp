#include "eegfeat/time_features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eegfeat/error.hpp"

namespace eegfeat {

namespace {

void require_length(std::span<const double> x, std::size_t n,
                    const char* what) {
  if (x.size() < n) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + " needs at least " + std::to_string(n) +
             " samples, got " + std::to_string(x.size()));
  }
}

// Bin index of v in `bins` equal-width bins over [lo, hi]; hi falls in the
// last bin.
int amplitude_bin(double v, double lo, double hi, int bins) {
  const int b = static_cast<int>((v - lo) / (hi - lo) * bins);
  return std::clamp(b, 0, bins - 1);
}

std::vector<double> first_difference(std::span<const double> x) {
  std::vector<double> d(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) d[i - 1] = x[i] - x[i - 1];
  return d;
}

}  // namespace

void TemplateConfig::validate() const {
  require(m >= 1, "template length m must be >= 1");
  require(r_factor > 0.0, "tolerance factor must be > 0");
  require(bins >= 2, "bin count must be >= 2");
  require(tau >= 1, "delay tau must be >= 1");
}

double mean(std::span<const double> x) {
  require_length(x, 1, "mean");
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  const double mu = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(x.size());
}

double sample_stddev(std::span<const double> x) {
  require_length(x, 2, "sample standard deviation");
  const double mu = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

double quantile(std::span<const double> x, double p) {
  require_length(x, 1, "quantile");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double pos = p * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

StatSummary stat_summary(std::span<const double> x) {
  require_length(x, 2, "stat_summary");
  StatSummary s;
  const double n = static_cast<double>(x.size());
  s.mean = mean(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  auto q = [&](double p) {
    const double pos = p * (n - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  s.q1 = q(0.25);
  s.median = q(0.5);
  s.q3 = q(0.75);
  s.iqr = s.q3 - s.q1;

  if (s.max == s.min) {
    // Constant input: zero spread, shape moments defined as 0.
    s.variance = 0.0;
    s.cv = 0.0;
    s.mode = s.min;
    return s;
  }
  s.variance = m2;
  const double sd = std::sqrt(m2);
  s.cv = s.mean != 0.0 ? sd / s.mean : 0.0;
  s.skewness = m3 / (sd * sd * sd);
  s.kurtosis = m4 / (m2 * m2);

  std::vector<std::size_t> counts(kAmplitudeBins, 0);
  for (double v : x) ++counts[amplitude_bin(v, s.min, s.max, kAmplitudeBins)];
  const auto best = std::max_element(counts.begin(), counts.end()) - counts.begin();
  const double width = (s.max - s.min) / kAmplitudeBins;
  s.mode = s.min + (static_cast<double>(best) + 0.5) * width;
  return s;
}

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double average_power(std::span<const double> x) {
  require_length(x, 1, "average_power");
  return energy(x) / static_cast<double>(x.size());
}

double rms(std::span<const double> x) { return std::sqrt(average_power(x)); }

double line_length(std::span<const double> x) {
  require_length(x, 2, "line_length");
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += std::abs(x[i] - x[i - 1]);
  return acc;
}

double nonlinear_energy(std::span<const double> x) {
  require_length(x, 3, "nonlinear_energy");
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    acc += x[i] * x[i] - x[i + 1] * x[i - 1];
  }
  return acc;
}

double shannon_entropy(std::span<const double> x, int bins) {
  require_length(x, 1, "shannon_entropy");
  require(bins >= 2, "shannon_entropy needs at least 2 bins");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi == lo) return 0.0;
  std::vector<std::size_t> counts(bins, 0);
  for (double v : x) ++counts[amplitude_bin(v, lo, hi, bins)];
  const double n = static_cast<double>(x.size());
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

namespace {

void require_even_order(int m, const char* what) {
  if (m <= 0 || m % 2 != 0) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + " needs a positive even m, got " + std::to_string(m));
  }
}

std::vector<double> code_histogram(const std::vector<unsigned>& codes, int m) {
  std::vector<double> hist(std::size_t{1} << m, 0.0);
  for (auto c : codes) hist[c] += 1.0;
  for (auto& h : hist) h /= static_cast<double>(codes.size());
  return hist;
}

}  // namespace

std::vector<unsigned> lbp_codes(std::span<const double> x, int m) {
  require_even_order(m, "LBP");
  require(m <= 16, "LBP order must be <= 16");
  require_length(x, static_cast<std::size_t>(m) + 2, "LBP");
  const std::size_t half = static_cast<std::size_t>(m) / 2;
  std::vector<unsigned> codes(x.size() - m);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const double center = x[i + half];
    unsigned code = 0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
      const double v = j < half ? x[i + j] : x[i + j + 1];
      if (v - center >= 0.0) code |= 1u << j;
    }
    codes[i] = code;
  }
  return codes;
}

std::vector<unsigned> lndp_codes(std::span<const double> x, int m) {
  require(m >= 1 && m <= 16, "LNDP order must be in [1, 16]");
  require_length(x, static_cast<std::size_t>(m) + 2, "LNDP");
  std::vector<unsigned> codes(x.size() - m);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    unsigned code = 0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
      if (x[i + j] - x[i + j + 1] >= 0.0) code |= 1u << j;
    }
    codes[i] = code;
  }
  return codes;
}

std::vector<unsigned> lgp_codes(std::span<const double> x, int m) {
  require_even_order(m, "LGP");
  require(m <= 16, "LGP order must be <= 16");
  require_length(x, static_cast<std::size_t>(m) + 2, "LGP");
  const std::size_t half = static_cast<std::size_t>(m) / 2;
  std::vector<unsigned> codes(x.size() - m);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    // Sums m + 1 terms and divides by m, as the pattern is defined.
    double avg = 0.0;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(m); ++k) {
      avg += std::abs(x[i + k] - x[i]);
    }
    avg /= m;
    const double center = x[i + half];
    unsigned code = 0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
      const double v = j < half ? x[i + j] : x[i + j + 1];
      if (std::abs(v - center) - avg >= 0.0) code |= 1u << j;
    }
    codes[i] = code;
  }
  return codes;
}

std::vector<double> lbp_histogram(std::span<const double> x, int m) {
  return code_histogram(lbp_codes(x, m), m);
}
std::vector<double> lndp_histogram(std::span<const double> x, int m) {
  return code_histogram(lndp_codes(x, m), m);
}
std::vector<double> lgp_histogram(std::span<const double> x, int m) {
  return code_histogram(lgp_codes(x, m), m);
}

Hjorth hjorth(std::span<const double> x) {
  require_length(x, 3, "hjorth");
  const double var_x = variance(x);
  const auto dx = first_difference(x);
  const auto ddx = first_difference(dx);
  const double var_dx = variance(dx);
  const double var_ddx = variance(ddx);
  if (var_x <= 0.0) {
    fail(ErrorCode::undefined_result,
         "Hjorth parameters are undefined for a zero-variance signal");
  }
  Hjorth h;
  h.activity = var_x;
  h.mobility = std::sqrt(var_dx / var_x);
  // A constant slope carries no curvature; complexity is taken as 0.
  h.complexity = var_dx > 0.0 ? std::sqrt(var_ddx / var_dx) / h.mobility : 0.0;
  return h;
}

std::size_t zero_crossings(std::span<const double> x) {
  require_length(x, 2, "zero_crossings");
  std::size_t n = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] * x[i] < 0.0) ++n;
  }
  return n;
}

std::size_t local_extrema(std::span<const double> x) {
  require_length(x, 3, "local_extrema");
  std::size_t n = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if ((x[i] - x[i - 1]) * (x[i + 1] - x[i]) < 0.0) ++n;
  }
  return n;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2,
          "regression needs two equally sized sequences of >= 2 points");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  require(sxx > 0.0, "regression abscissae are all equal");
  return sxy / sxx;
}

}  // namespace eegfeat
