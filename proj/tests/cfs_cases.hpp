#pragma once

#include <random>
#include <string>
#include <vector>

#include "eegfeat/cfs.hpp"
#include "oracles.hpp"

namespace cases {

// Six features of mixed relevance and redundancy against a random label.
inline eegfeat::FeatureTable cfs_table(std::uint64_t seed, std::size_t rows = 400) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::bernoulli_distribution label(0.3);
  const double s0 = u(rng), s1 = u(rng), s2 = u(rng), mix = u(rng) / 3.0;
  eegfeat::FeatureTable t({"F0", "F1", "F2", "F3", "F4", "F5"});
  for (std::size_t r = 0; r < rows; ++r) {
    const int l = label(rng) ? 1 : 0;
    const double a = l + s0 * g(rng);
    const double b = l + s1 * g(rng);
    const double c = a + mix * g(rng);
    const double d = -l + s2 * g(rng);
    const double e = g(rng);
    const double f = b * b + e;
    t.add_row("r", static_cast<double>(r), l ? eegfeat::EpochLabel::seizure : eegfeat::EpochLabel::normal,
              {a, b, c, d, e, f});
  }
  return t;
}

inline std::vector<std::string> cfs_features() { return {"F0", "F1", "F2", "F3", "F4", "F5"}; }

// Best merit over all subsets of size k.
inline double exhaustive_best(const eegfeat::CorrelationSet& c, std::size_t k) {
  const std::size_t n = c.features.size();
  double best = -1.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    best = std::max(best, oracle::merit(s, c.class_corr, c.feature_corr));
  }
  return best;
}

}  // namespace cases
