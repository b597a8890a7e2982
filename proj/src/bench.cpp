#include "eegfeat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>

#include "eegfeat/catalog.hpp"
#include "eegfeat/error.hpp"
#include "eegfeat/feature_table.hpp"
#include "eegfeat/time_features.hpp"

namespace eegfeat {

namespace {

using Kernel = std::function<double(std::span<const double>)>;

struct Entry {
  const char* name;
  const char* complexity;
  Kernel fn;
};

double tolerance(std::span<const double> x) { return 0.2 * sample_stddev(x); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"LineLength", "linear", [](auto x) { return line_length(x); }},
      {"NE", "linear", [](auto x) { return nonlinear_energy(x); }},
      {"Energy", "linear", [](auto x) { return energy(x); }},
      {"Hjorth", "linear", [](auto x) { return hjorth(x).complexity; }},
      {"ZeroCrossings", "linear",
       [](auto x) { return static_cast<double>(zero_crossings(x)); }},
      {"LBP", "linear", [](auto x) { return lbp_histogram(x, 6)[0]; }},
      {"LNDP", "linear", [](auto x) { return lndp_histogram(x, 6)[0]; }},
      {"LGP", "linear", [](auto x) { return lgp_histogram(x, 6)[0]; }},
      {"ApEnNaive", "quadratic",
       [](auto x) { return reference::approximate_entropy(x, 2, tolerance(x)); }},
      {"SampEnNaive", "quadratic",
       [](auto x) { return reference::sample_entropy(x, 2, tolerance(x)); }},
      {"ApEn", "", [](auto x) { return approximate_entropy(x, 2, tolerance(x)); }},
      {"SampEn", "", [](auto x) { return sample_entropy(x, 2, tolerance(x)); }},
  };
  return e;
}

const Entry& entry(const std::string& name) {
  for (const auto& e : entries()) {
    if (name == e.name) return e;
  }
  fail(ErrorCode::invalid_argument, "unknown benchmark feature '" + name + "'");
}

volatile double g_sink = 0.0;

std::size_t calibrate(const Kernel& fn, std::span<const double> x, const BenchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  std::size_t calls = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < calls; ++i) g_sink = g_sink + fn(x);
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    if (dt >= cfg.min_batch_s || calls >= (std::size_t{1} << 24)) return calls;
    calls *= 2;
  }
}

double batch_per_call(const Kernel& fn, std::span<const double> x, std::size_t calls) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  for (std::size_t i = 0; i < calls; ++i) g_sink = g_sink + fn(x);
  return std::chrono::duration<double>(clock::now() - t0).count() / static_cast<double>(calls);
}

}  // namespace

std::vector<std::string> bench_features() {
  std::vector<std::string> v;
  for (const auto& e : entries()) v.emplace_back(e.name);
  return v;
}

std::string bench_complexity(const std::string& feature) { return entry(feature).complexity; }

void BenchConfig::validate() const {
  require(!features.empty(), "benchmark needs at least one feature");
  require(sizes.size() >= 2, "benchmark needs at least two sizes");
  for (auto n : sizes) require(n >= 64, "benchmark sizes must be >= 64");
  require(repeats >= 1, "benchmark repeats must be >= 1");
  require(min_batch_s > 0.0, "benchmark batch time must be > 0");
  for (const auto& f : features) entry(f);
}

BenchReport run_bench(const BenchConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::map<std::size_t, std::vector<double>> signals;
  for (auto n : cfg.sizes) {
    auto& x = signals[n];
    x.resize(n);
    for (auto& v : x) v = gauss(rng);
  }
  BenchReport report;
  for (const auto& name : cfg.features) {
    const auto& e = entry(name);
    const std::size_t k = cfg.sizes.size();
    std::vector<std::size_t> calls(k);
    std::vector<double> best(k, INFINITY);
    for (std::size_t i = 0; i < k; ++i) calls[i] = calibrate(e.fn, signals[cfg.sizes[i]], cfg);
    // Batches rotate over the sizes so slow periods hit every size alike.
    for (int r = 0; r < cfg.repeats; ++r) {
      for (std::size_t i = 0; i < k; ++i) {
        best[i] = std::min(best[i], batch_per_call(e.fn, signals[cfg.sizes[i]], calls[i]));
      }
    }
    std::vector<double> log_n, log_t;
    for (std::size_t i = 0; i < k; ++i) {
      report.timings.push_back({name, cfg.sizes[i], best[i]});
      log_n.push_back(std::log(static_cast<double>(cfg.sizes[i])));
      log_t.push_back(std::log(best[i]));
    }
    report.slopes.push_back({name, e.complexity, ols_slope(log_n, log_t)});
  }
  return report;
}

void write_bench_csv(std::ostream& os, const BenchReport& report) {
  std::map<std::string, const BenchSlope*> slope;
  for (const auto& s : report.slopes) slope[s.feature] = &s;
  os << "feature,complexity,n,seconds,slope\n";
  for (const auto& t : report.timings) {
    const auto* s = slope.at(t.feature);
    os << t.feature << ',' << s->complexity << ',' << t.n << ',' << format_value(t.seconds)
       << ',' << format_value(s->slope) << '\n';
  }
}

}  // namespace eegfeat
