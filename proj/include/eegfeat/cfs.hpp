#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eegfeat/feature_table.hpp"

namespace eegfeat {

struct DiscretizedFeature {
  std::vector<int> codes;
  int n_bins = 0;
};

inline constexpr int kCfsBins = 10;

// Equal-frequency binning on ranks; tied values share the lowest rank.
DiscretizedFeature discretize(std::span<const double> values, int n_bins = kCfsBins);
DiscretizedFeature discretize_labels(std::span<const EpochLabel> labels);

// Symmetrical uncertainty 2 (H(a) - H(a|b)) / (H(a) + H(b)), natural log;
// 0 when both entropies vanish.
double symmetric_uncertainty(const DiscretizedFeature& a, const DiscretizedFeature& b);

// Mean feature-class correlation over the subset, scaled down by the mean
// pairwise feature-feature correlation.
double merit(std::span<const std::size_t> subset, std::span<const double> class_corr,
             const std::vector<std::vector<double>>& feature_corr);

struct CorrelationSet {
  std::vector<std::string> features;
  std::vector<double> class_corr;
  std::vector<std::vector<double>> feature_corr;
};

// SU of every feature with the labels and with each other. Rows with any
// non-finite value among `features` are dropped first.
CorrelationSet correlations(const FeatureTable& table,
                            const std::vector<std::string>& features,
                            int n_bins = kCfsBins, unsigned threads = 1);

struct MeritTrace {
  std::vector<std::size_t> selected;    // feature indices in entry order
  std::vector<std::string> names;       // same order
  std::vector<double> merits;           // merit of the first k+1 features
  std::size_t best_size = 0;            // argmax of merits, 1-based
};

// Greedy forward selection. Ties prefer the higher feature-class
// correlation, then the lower feature index.
MeritTrace forward_search(const CorrelationSet& corr, std::size_t max_size);

void write_merit_trace_csv(std::ostream& os, const MeritTrace& trace);
std::string best_subset_json(const MeritTrace& trace);

}  // namespace eegfeat
