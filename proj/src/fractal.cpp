#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eegfeat/error.hpp"
#include "eegfeat/time_features.hpp"

namespace eegfeat {

namespace {

// Distinct integers from lo to hi, roughly geometrically spaced with
// `per_octave` points per doubling.
std::vector<std::size_t> log_spaced(std::size_t lo, std::size_t hi,
                                    int per_octave) {
  std::vector<std::size_t> out;
  if (hi < lo) return out;
  const double step = std::pow(2.0, 1.0 / per_octave);
  for (double v = static_cast<double>(lo); v <= static_cast<double>(hi) * (1 + 1e-12);
       v *= step) {
    const auto n = static_cast<std::size_t>(std::llround(v));
    if (n > hi) break;
    if (out.empty() || out.back() != n) out.push_back(n);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

std::vector<double> profile(std::span<const double> x) {
  const double mu = mean(x);
  std::vector<double> z(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i] - mu;
    z[i] = acc;
  }
  return z;
}

}  // namespace

double hurst_exponent(std::span<const double> x) {
  if (x.size() < 32) {
    fail(ErrorCode::invalid_argument, "hurst_exponent needs N >= 32");
  }
  std::vector<double> log_n, log_rs;
  for (std::size_t n : log_spaced(8, x.size() / 2, 2)) {
    const std::size_t windows = x.size() / n;
    double rs_sum = 0.0;
    std::size_t used = 0;
    for (std::size_t w = 0; w < windows; ++w) {
      const auto part = x.subspan(w * n, n);
      const double mu = mean(part);
      double z = 0.0, z_min = 0.0, z_max = 0.0, ss = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double d = part[t] - mu;
        z += d;
        ss += d * d;
        if (t == 0) {
          z_min = z_max = z;
        } else {
          z_min = std::min(z_min, z);
          z_max = std::max(z_max, z);
        }
      }
      const double sd = std::sqrt(ss / static_cast<double>(n));
      if (sd <= 0.0) continue;
      rs_sum += (z_max - z_min) / sd;
      ++used;
    }
    if (used == 0 || rs_sum <= 0.0) continue;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_rs.push_back(std::log(rs_sum / static_cast<double>(used)));
  }
  if (log_n.size() < 2) {
    fail(ErrorCode::undefined_result,
         "hurst_exponent: every window has zero variance");
  }
  return ols_slope(log_n, log_rs);
}

double higuchi_fd(std::span<const double> x, int k_max) {
  if (k_max < 2 || x.size() <= static_cast<std::size_t>(k_max)) {
    fail(ErrorCode::invalid_argument, "higuchi_fd needs N > k_max >= 2");
  }
  const std::size_t n = x.size();
  std::vector<double> log_tau, log_len;
  for (std::size_t tau = 1; tau <= static_cast<std::size_t>(k_max); ++tau) {
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t start = 0; start < tau; ++start) {
      const std::size_t steps = (n - 1 - start) / tau;
      if (steps == 0) continue;
      double acc = 0.0;
      for (std::size_t i = 1; i <= steps; ++i) {
        acc += std::abs(x[start + i * tau] - x[start + (i - 1) * tau]);
      }
      const double norm = static_cast<double>(n - 1) /
                          (static_cast<double>(steps) * static_cast<double>(tau));
      total += acc * norm / static_cast<double>(tau);
      ++used;
    }
    const double len = total / static_cast<double>(used);
    if (!(len > 0.0)) {
      fail(ErrorCode::undefined_result,
           "higuchi_fd is undefined for a constant signal");
    }
    log_tau.push_back(std::log(static_cast<double>(tau)));
    log_len.push_back(std::log(len));
  }
  return -ols_slope(log_tau, log_len);
}

double box_counting_fd(std::span<const double> x) {
  if (x.size() < 16) {
    fail(ErrorCode::invalid_argument, "box_counting_fd needs N >= 16");
  }
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it, range = *hi_it - *lo_it;
  if (range == 0.0) return 1.0;

  const std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - lo) / range;
  const double dt = 1.0 / static_cast<double>(n - 1);

  const int max_k = static_cast<int>(std::floor(std::log2(static_cast<double>(n)))) - 1;
  std::vector<double> log_inv_eps, log_count;
  for (int k = 1; k <= max_k; ++k) {
    const std::size_t cols = std::size_t{1} << k;
    const double scale = static_cast<double>(cols);
    std::vector<double> col_lo(cols, 2.0), col_hi(cols, -1.0);
    auto touch = [&](std::size_t c, double v) {
      col_lo[c] = std::min(col_lo[c], v);
      col_hi[c] = std::max(col_hi[c], v);
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double t0 = static_cast<double>(i) * dt;
      const double t1 = static_cast<double>(i + 1) * dt;
      const auto c0 = std::min(cols - 1, static_cast<std::size_t>(t0 * scale));
      const auto c1 = std::min(cols - 1, static_cast<std::size_t>(t1 * scale));
      for (std::size_t c = c0; c <= c1; ++c) {
        const double ta = std::max(t0, static_cast<double>(c) / scale);
        const double tb = std::min(t1, static_cast<double>(c + 1) / scale);
        if (tb < ta) continue;
        const double ya = y[i] + (y[i + 1] - y[i]) * (ta - t0) / dt;
        const double yb = y[i] + (y[i + 1] - y[i]) * (tb - t0) / dt;
        touch(c, ya);
        touch(c, yb);
      }
    }
    double boxes = 0.0;
    const auto top = static_cast<double>(cols - 1);
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_hi[c] < col_lo[c]) continue;
      const double b_lo = std::clamp(std::floor(col_lo[c] * scale + 1e-9), 0.0, top);
      const double b_hi = std::clamp(std::ceil(col_hi[c] * scale - 1e-9) - 1.0, b_lo, top);
      boxes += b_hi - b_lo + 1.0;
    }
    log_inv_eps.push_back(std::log(scale));
    log_count.push_back(std::log(boxes));
  }
  return ols_slope(log_inv_eps, log_count);
}

double dfa(std::span<const double> x) {
  if (x.size() < 64) {
    fail(ErrorCode::invalid_argument, "dfa needs N >= 64");
  }
  const auto z = profile(x);
  std::vector<double> log_n, log_f;
  for (std::size_t n : log_spaced(4, x.size() / 4, 2)) {
    const std::size_t segments = z.size() / n;
    // Abscissa t = 0..n-1 centred for a stable fit.
    const double t_mean = 0.5 * static_cast<double>(n - 1);
    double stt = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      stt += (static_cast<double>(t) - t_mean) * (static_cast<double>(t) - t_mean);
    }
    double rss = 0.0;
    for (std::size_t s = 0; s < segments; ++s) {
      const double* seg = z.data() + s * n;
      double z_mean = 0.0;
      for (std::size_t t = 0; t < n; ++t) z_mean += seg[t];
      z_mean /= static_cast<double>(n);
      double stz = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        stz += (static_cast<double>(t) - t_mean) * (seg[t] - z_mean);
      }
      const double slope = stz / stt;
      for (std::size_t t = 0; t < n; ++t) {
        const double fit = z_mean + slope * (static_cast<double>(t) - t_mean);
        rss += (seg[t] - fit) * (seg[t] - fit);
      }
    }
    const double f = std::sqrt(rss / static_cast<double>(segments * n));
    if (!(f > 0.0)) continue;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_f.push_back(std::log(f));
  }
  if (log_n.size() < 2) {
    fail(ErrorCode::undefined_result, "dfa: fluctuation is zero at every scale");
  }
  return ols_slope(log_n, log_f);
}

}  // namespace eegfeat
