#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eegfeat {

// Population statistics of a real sequence. Quartiles use linear
// interpolation between order statistics; the mode is the centre of the most
// populated of 64 equal-width amplitude bins.
struct StatSummary {
  double mean = 0.0;
  double variance = 0.0;
  double cv = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // raw, not excess
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double mode = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
};

// Template-based feature parameters. `r_factor` scales the sample standard
// deviation of the analysed sequence to give the tolerance r.
struct TemplateConfig {
  int m = 2;
  double r_factor = 0.2;
  int bins = 64;
  int tau = 1;

  void validate() const;
};

inline constexpr int kAmplitudeBins = 64;
inline constexpr int kDistEnBins = 256;

StatSummary stat_summary(std::span<const double> x);

double mean(std::span<const double> x);
double variance(std::span<const double> x);         // population
double sample_stddev(std::span<const double> x);    // N - 1 denominator
double quantile(std::span<const double> x, double p);

double energy(std::span<const double> x);
double average_power(std::span<const double> x);
double rms(std::span<const double> x);

double line_length(std::span<const double> x);
double nonlinear_energy(std::span<const double> x);

// -sum p ln p over `bins` equal-width bins spanning [min, max].
double shannon_entropy(std::span<const double> x, int bins = kAmplitudeBins);

// Chebyshev-distance template entropies. Matches use d <= r.
double approximate_entropy(std::span<const double> x, int m, double r);
// Throws ErrorCode::undefined_result when no (m+1)-length pair matches.
double sample_entropy(std::span<const double> x, int m, double r);
double fuzzy_entropy(std::span<const double> x, int m, double r);
double distribution_entropy(std::span<const double> x, int m,
                            int bins = kDistEnBins);

// Straight double-loop versions of ApEn/SampEn. They define the quadratic
// reference cost for the benchmark command.
namespace reference {
double approximate_entropy(std::span<const double> x, int m, double r);
double sample_entropy(std::span<const double> x, int m, double r);
}  // namespace reference

// Ordinal-pattern entropies; ties rank the earlier sample first.
double permutation_entropy(std::span<const double> x, int m);
double weighted_permutation_entropy(std::span<const double> x, int m);

// Index of the ordinal pattern of x[0..m) in lexicographic order of the
// stable argsort permutation, in [0, m!).
std::size_t ordinal_pattern(std::span<const double> window);

double svd_entropy(std::span<const double> x, int m, int tau);

double hurst_exponent(std::span<const double> x);
double higuchi_fd(std::span<const double> x, int k_max = 8);
double box_counting_fd(std::span<const double> x);
double dfa(std::span<const double> x);

// Normalized code histograms with 2^m bins.
std::vector<double> lbp_histogram(std::span<const double> x, int m = 6);
std::vector<double> lndp_histogram(std::span<const double> x, int m = 6);
std::vector<double> lgp_histogram(std::span<const double> x, int m = 6);

// Per-position codes behind the histograms (N - m positions).
std::vector<unsigned> lbp_codes(std::span<const double> x, int m);
std::vector<unsigned> lndp_codes(std::span<const double> x, int m);
std::vector<unsigned> lgp_codes(std::span<const double> x, int m);

struct Hjorth {
  double activity = 0.0;
  double mobility = 0.0;
  double complexity = 0.0;
};
// Throws undefined_result for a constant signal. Complexity is 0 when the
// first difference is constant.
Hjorth hjorth(std::span<const double> x);

std::size_t zero_crossings(std::span<const double> x);
std::size_t local_extrema(std::span<const double> x);

// Least-squares slope of y on x with intercept.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace eegfeat
