#pragma once

// Randomized inputs for the entropy oracle comparisons.

#include <cstdint>
#include <random>
#include <vector>

namespace cases {

struct EntropyCase {
  std::vector<double> x;
  int m;
  double r;
  int bins;
  int order;
};

// Gaussian, uniform, integer-valued (many ties and exact distance hits) and
// AR(1) signals with N in [20, 512] and varied m, r, bins and pattern order.
inline std::vector<EntropyCase> entropy_cases(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(20, 512), kind(0, 3), m(1, 3), order(2, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  const int bin_choices[] = {2, 16, 64, 256};
  std::vector<EntropyCase> out;
  for (std::size_t c = 0; c < count; ++c) {
    EntropyCase ec;
    const auto n = static_cast<std::size_t>(len(rng));
    const int k = kind(rng);
    ec.x.resize(n);
    double prev = 0.0;
    for (auto& v : ec.x) {
      switch (k) {
        case 0: v = g(rng); break;
        case 1: v = unit(rng) * 10.0 - 5.0; break;
        case 2: v = static_cast<double>(static_cast<int>(unit(rng) * 5.0)); break;
        default: prev = 0.9 * prev + g(rng); v = prev; break;
      }
    }
    ec.m = m(rng);
    ec.r = k == 2 ? 1.0 : (0.1 + 0.3 * unit(rng)) * 1.0;
    ec.bins = bin_choices[c % 4];
    ec.order = order(rng);
    out.push_back(std::move(ec));
  }
  return out;
}

}  // namespace cases
