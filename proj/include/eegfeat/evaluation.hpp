#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eegfeat/feature_table.hpp"
#include "eegfeat/signal.hpp"

namespace eegfeat {

// Gaussian-kernel density of one class.
struct ClassDensity {
  std::vector<double> samples;  // sorted ascending
  double bandwidth = 0.0;
  double prior = 0.0;

  double pdf(double x) const;
};

// Two-class model: index 0 is the seizure class C1, index 1 the normal C2.
struct KdeModel {
  std::array<ClassDensity, 2> classes;

  double min_sample() const;
  double max_sample() const;
  double max_bandwidth() const;
};

// h = 1.06 * sigma * n^(-1/5), sigma the sample (n - 1) standard deviation.
double rule_of_thumb_bandwidth(std::span<const double> x);

// Priors default to class counts over the total. A class with zero spread
// gets h = 1e-3 * (range of all samples) instead.
KdeModel fit_kde(const std::vector<std::vector<double>>& classes,
                 std::optional<std::array<double, 2>> priors = std::nullopt);

struct QuadratureGrid {
  std::size_t points = 4096;
  double margin_bandwidths = 4.0;
};

// Integral of min_i P(C_i) p(x | C_i) by the trapezoid rule on a uniform grid
// over [min - 4 h_max, max + 4 h_max].
double bayes_error(const KdeModel& model, const QuadratureGrid& grid = {});

// Baseline error: the seizure share of all epochs.
double err0(std::size_t n_seizure, std::size_t n_normal);
double improvement_rate(double err_b, double err_0);

inline constexpr double kSignificanceThreshold = 4.5;

struct SignificanceReport {
  std::string feature;
  std::string hemisphere;  // "L" or "R"
  double err_b = 0.0;
  double err_0 = 0.0;
  double rate = 0.0;
  bool significant = false;
};

// Bayes error of the column <feature><hemisphere>. Rows with non-finite
// values are left out of the densities; err_0 always uses the whole table.
SignificanceReport feature_significance(const FeatureTable& table,
                                        const std::string& feature,
                                        const std::string& hemisphere,
                                        double threshold = kSignificanceThreshold,
                                        const QuadratureGrid& grid = {});

// Every <feature><L|R> column pair, evaluated across `threads` workers and
// sorted by rate descending (ties by feature, then hemisphere).
std::vector<SignificanceReport> evaluate_table(
    const FeatureTable& table, double threshold = kSignificanceThreshold,
    const QuadratureGrid& grid = {}, unsigned threads = 1);

void write_significance_csv(std::ostream& os,
                            const std::vector<SignificanceReport>& reports);

struct DetectionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::size_t total() const { return tp + fp + fn + tn; }
};

struct EpochMetrics {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
};
EpochMetrics epoch_metrics(const DetectionCounts& counts);

struct EventMetrics {
  double gdr_percent = 0.0;
  double fpr_per_hour = 0.0;
};
EventMetrics event_metrics(std::span<const Interval> predicted,
                           std::span<const Interval> annotated,
                           double duration_h);

}  // namespace eegfeat
