#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "eegfeat/error.hpp"
#include "eegfeat/time_features.hpp"

namespace eegfeat {

namespace {

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::fabs(sum_) >= std::fabs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_template_args(std::span<const double> x, int m, const char* what) {
  if (m < 1) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + ": template length must be >= 1");
  }
  if (x.size() < static_cast<std::size_t>(m) + 2) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + " needs N >= m + 2 samples, got N = " +
             std::to_string(x.size()));
  }
}

void check_tolerance(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + ": tolerance r must be finite and > 0");
  }
}

// Per-template match counts (self-matches excluded). counts_m covers the
// N - m + 1 templates of length m, counts_m1 the N - m templates of length
// m + 1. Candidate pairs are pruned by sorting on the first coordinate.
struct MatchCounts {
  std::vector<std::size_t> m;
  std::vector<std::size_t> m1;
};

MatchCounts count_matches(std::span<const double> x, int m, double r) {
  const std::size_t n = x.size();
  const std::size_t mm = static_cast<std::size_t>(m);
  const std::size_t n_m = n - mm + 1;
  const std::size_t n_m1 = n - mm;
  MatchCounts c{std::vector<std::size_t>(n_m, 0),
                std::vector<std::size_t>(n_m1, 0)};

  std::vector<std::size_t> order(n_m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  for (std::size_t p = 0; p < n_m; ++p) {
    const std::size_t i = order[p];
    for (std::size_t q = p + 1; q < n_m; ++q) {
      const std::size_t j = order[q];
      if (x[j] - x[i] > r) break;
      bool match = true;
      for (std::size_t k = 1; k < mm; ++k) {
        if (std::abs(x[i + k] - x[j + k]) > r) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      ++c.m[i];
      ++c.m[j];
      if (i < n_m1 && j < n_m1 && std::abs(x[i + mm] - x[j + mm]) <= r) {
        ++c.m1[i];
        ++c.m1[j];
      }
    }
  }
  return c;
}

double plogp_sum(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

// Row-major (count x len) matrix of mean-removed windows x[i..i+len).
std::vector<double> centered_windows(std::span<const double> x,
                                     std::size_t count, std::size_t len) {
  std::vector<double> u(count * len);
  for (std::size_t i = 0; i < count; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += x[i + k];
    const double mu = s / static_cast<double>(len);
    for (std::size_t k = 0; k < len; ++k) u[i * len + k] = x[i + k] - mu;
  }
  return u;
}

double chebyshev(const double* a, const double* b, std::size_t len) {
  double d = 0.0;
  for (std::size_t k = 0; k < len; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::size_t factorial(int m) {
  std::size_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

void check_pattern_order(std::span<const double> x, int m, const char* what) {
  if (m < 1 || m > 8) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + ": pattern order must be in [1, 8]");
  }
  if (x.size() < static_cast<std::size_t>(m)) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + " needs N >= m samples");
  }
}

}  // namespace

double approximate_entropy(std::span<const double> x, int m, double r) {
  check_template_args(x, m, "approximate_entropy");
  check_tolerance(r, "approximate_entropy");
  const auto c = count_matches(x, m, r);
  const double n_m = static_cast<double>(c.m.size());
  const double n_m1 = static_cast<double>(c.m1.size());
  double phi_m = 0.0, phi_m1 = 0.0;
  for (auto v : c.m) phi_m += std::log(static_cast<double>(v + 1) / n_m);
  for (auto v : c.m1) phi_m1 += std::log(static_cast<double>(v + 1) / n_m1);
  return phi_m / n_m - phi_m1 / n_m1;
}

double sample_entropy(std::span<const double> x, int m, double r) {
  check_template_args(x, m, "sample_entropy");
  check_tolerance(r, "sample_entropy");
  const auto c = count_matches(x, m, r);
  const double a = static_cast<double>(std::accumulate(c.m.begin(), c.m.end(), std::size_t{0}));
  const double b = static_cast<double>(std::accumulate(c.m1.begin(), c.m1.end(), std::size_t{0}));
  if (b == 0.0) {
    fail(ErrorCode::undefined_result,
         "sample entropy is undefined: no template pair matches at length m + 1");
  }
  return std::log(a) - std::log(b);
}

namespace reference {

double approximate_entropy(std::span<const double> x, int m, double r) {
  check_template_args(x, m, "approximate_entropy");
  check_tolerance(r, "approximate_entropy");
  auto phi = [&](std::size_t len) {
    const std::size_t count = x.size() - len + 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t hits = 0;
      for (std::size_t j = 0; j < count; ++j) {
        bool match = true;
        for (std::size_t k = 0; k < len && match; ++k) {
          match = std::abs(x[i + k] - x[j + k]) <= r;
        }
        hits += match;
      }
      acc += std::log(static_cast<double>(hits) / static_cast<double>(count));
    }
    return acc / static_cast<double>(count);
  };
  const auto mm = static_cast<std::size_t>(m);
  return phi(mm) - phi(mm + 1);
}

double sample_entropy(std::span<const double> x, int m, double r) {
  check_template_args(x, m, "sample_entropy");
  check_tolerance(r, "sample_entropy");
  auto pairs = [&](std::size_t len) {
    const std::size_t count = x.size() - len + 1;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        if (i == j) continue;
        bool match = true;
        for (std::size_t k = 0; k < len && match; ++k) {
          match = std::abs(x[i + k] - x[j + k]) <= r;
        }
        hits += match;
      }
    }
    return static_cast<double>(hits);
  };
  const auto mm = static_cast<std::size_t>(m);
  const double b = pairs(mm + 1);
  if (b == 0.0) {
    fail(ErrorCode::undefined_result,
         "sample entropy is undefined: no template pair matches at length m + 1");
  }
  return std::log(pairs(mm)) - std::log(b);
}

}  // namespace reference

double fuzzy_entropy(std::span<const double> x, int m, double r) {
  check_template_args(x, m, "fuzzy_entropy");
  check_tolerance(r, "fuzzy_entropy");
  // N - m templates at both lengths so the two similarity averages share the
  // (N - m)(N - m - 1) pair normalization.
  const std::size_t count = x.size() - static_cast<std::size_t>(m);
  const double scale = 1.0 / (2.0 * r * r);
  auto phi = [&](std::size_t len) {
    const auto u = centered_windows(x, count, len);
    Accumulator acc;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const double d = chebyshev(&u[i * len], &u[j * len], len);
        acc.add(std::exp(-d * d * scale));
      }
    }
    return 2.0 * acc.value() / (static_cast<double>(count) * static_cast<double>(count - 1));
  };
  const auto mm = static_cast<std::size_t>(m);
  return std::log(phi(mm)) - std::log(phi(mm + 1));
}

double distribution_entropy(std::span<const double> x, int m, int bins) {
  check_template_args(x, m, "distribution_entropy");
  require(bins >= 2, "distribution_entropy needs at least 2 bins");
  const std::size_t len = static_cast<std::size_t>(m);
  const std::size_t count = x.size() - len + 1;
  const auto u = centered_windows(x, count, len);
  std::vector<double> d;
  d.reserve(count * (count - 1) / 2);
  double d_max = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      d.push_back(chebyshev(&u[i * len], &u[j * len], len));
      d_max = std::max(d_max, d.back());
    }
  }
  if (d_max == 0.0) return 0.0;
  std::vector<std::size_t> counts(bins, 0);
  for (double v : d) {
    const int b = std::min(bins - 1, static_cast<int>(v / d_max * bins));
    ++counts[b];
  }
  std::vector<double> p(bins);
  for (int b = 0; b < bins; ++b) {
    p[b] = static_cast<double>(counts[b]) / static_cast<double>(d.size());
  }
  return plogp_sum(p) / std::log(static_cast<double>(bins));
}

std::size_t ordinal_pattern(std::span<const double> window) {
  const std::size_t m = window.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return window[a] < window[b];
  });
  // Lehmer code of the permutation.
  std::size_t index = 0;
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t smaller = 0;
    for (std::size_t b = a + 1; b < m; ++b) smaller += perm[b] < perm[a];
    index = index * (m - a) + smaller;
  }
  return index;
}

double permutation_entropy(std::span<const double> x, int m) {
  check_pattern_order(x, m, "permutation_entropy");
  const std::size_t len = static_cast<std::size_t>(m);
  const std::size_t count = x.size() - len + 1;
  std::vector<double> p(factorial(m), 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    p[ordinal_pattern(x.subspan(i, len))] += 1.0;
  }
  for (auto& v : p) v /= static_cast<double>(count);
  return plogp_sum(p);
}

double weighted_permutation_entropy(std::span<const double> x, int m) {
  check_pattern_order(x, m, "weighted_permutation_entropy");
  const std::size_t len = static_cast<std::size_t>(m);
  const std::size_t count = x.size() - len + 1;
  std::vector<double> p(factorial(m), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto w = x.subspan(i, len);
    const double weight = variance(w);
    p[ordinal_pattern(w)] += weight;
    total += weight;
  }
  if (total == 0.0) return 0.0;
  for (auto& v : p) v /= total;
  return plogp_sum(p);
}

double svd_entropy(std::span<const double> x, int m, int tau) {
  require(m >= 1 && tau >= 1, "svd_entropy needs m >= 1 and tau >= 1");
  const std::size_t span_len =
      static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(tau) + 1;
  if (x.size() < static_cast<std::size_t>(m) * static_cast<std::size_t>(tau) ||
      x.size() < span_len) {
    fail(ErrorCode::invalid_argument, "svd_entropy needs N >= m * tau samples");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(x.size() - span_len + 1);
  Eigen::MatrixXd a(rows, m);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (int j = 0; j < m; ++j) {
      a(i, j) = x[static_cast<std::size_t>(i) + static_cast<std::size_t>(j * tau)];
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd s = svd.singularValues();
  const double total = s.sum();
  if (total == 0.0) return 0.0;
  std::vector<double> p(static_cast<std::size_t>(s.size()));
  for (Eigen::Index j = 0; j < s.size(); ++j) p[static_cast<std::size_t>(j)] = s(j) / total;
  return plogp_sum(p);
}

}  // namespace eegfeat
