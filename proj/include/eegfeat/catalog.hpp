#pragma once

#include <span>
#include <string>
#include <vector>

#include "eegfeat/spectral.hpp"

namespace eegfeat {

// Parameters shared by every scalar feature. The template tolerance is
// r = r_factor * (sample SD of the analysed sequence).
struct FeatureParams {
  int m = 2;
  double r_factor = 0.2;
  int shannon_bins = 64;
  int pattern_order = 3;
  int distribution_bins = 256;
  int svd_order = 10;
  int svd_delay = 1;
  int higuchi_kmax = 8;
  int code_order = 6;
  std::size_t welch_segment = 256;
  double welch_overlap = 0.5;
  std::vector<Band> bands = default_bands();

  void validate() const;
};

// Scalar features of a real sequence.
const std::vector<std::string>& time_feature_names();
bool is_time_feature(const std::string& name);

// Scalar features of a PSD. "BandEnergy<Band>" entries follow `bands`.
std::vector<std::string> frequency_feature_names(const FeatureParams& params);
bool is_frequency_feature(const std::string& name, const FeatureParams& params);

// Code-histogram features expanding to 2^code_order columns.
bool is_histogram_feature(const std::string& name);

// Values for `names` in order. Features whose result is undefined for this
// input (e.g. sample entropy without (m+1)-matches) come back as NaN; invalid
// arguments still throw.
std::vector<double> time_features(const std::vector<std::string>& names,
                                  std::span<const double> x,
                                  const FeatureParams& params);
double time_feature(const std::string& name, std::span<const double> x,
                    const FeatureParams& params);

std::vector<double> frequency_features(const std::vector<std::string>& names,
                                       const Psd& psd,
                                       const FeatureParams& params);

std::vector<double> histogram_feature(const std::string& name,
                                      std::span<const double> x,
                                      const FeatureParams& params);

// Tolerance used by the template entropies for this sequence.
double template_tolerance(std::span<const double> x, const FeatureParams& params);

}  // namespace eegfeat
