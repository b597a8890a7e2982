#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eegfeat {

// Benchmarked kernels. "linear" ones are expected to scale as O(N), the
// naive template entropies as O(N^2).
std::vector<std::string> bench_features();
std::string bench_complexity(const std::string& feature);  // "linear" | "quadratic" | ""

struct BenchConfig {
  std::vector<std::string> features = bench_features();
  std::vector<std::size_t> sizes = {1024, 2048, 4096};
  int repeats = 5;              // timed batches per size; the fastest is kept
  double min_batch_s = 0.02;    // calls per batch grow until a batch lasts this long
  std::uint64_t seed = 1;

  void validate() const;
};

struct BenchTiming {
  std::string feature;
  std::size_t n = 0;
  double seconds = 0.0;  // per call
};

struct BenchSlope {
  std::string feature;
  std::string complexity;
  double slope = 0.0;  // least-squares slope of log time on log N
};

struct BenchReport {
  std::vector<BenchTiming> timings;
  std::vector<BenchSlope> slopes;
};

BenchReport run_bench(const BenchConfig& cfg);

// feature,complexity,n,seconds,slope (slope repeated on each row).
void write_bench_csv(std::ostream& os, const BenchReport& report);

}  // namespace eegfeat
