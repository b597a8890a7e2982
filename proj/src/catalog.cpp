#include "eegfeat/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "eegfeat/error.hpp"
#include "eegfeat/time_features.hpp"

namespace eegfeat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kStatNames = {
    "Mean", "Variance", "CV", "Skewness", "Kurtosis", "Min",
    "Max",  "Median",   "Mode", "Q1",    "Q3",       "IQR"};

const std::vector<std::string> kHjorthNames = {"Activity", "Mobility",
                                                "Complexity"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

void FeatureParams::validate() const {
  require(m >= 1, "template length m must be >= 1");
  require(r_factor > 0.0, "tolerance factor must be > 0");
  require(shannon_bins >= 2 && distribution_bins >= 2, "bin counts must be >= 2");
  require(pattern_order >= 2 && pattern_order <= 8, "pattern order must be in [2, 8]");
  require(svd_order >= 1 && svd_delay >= 1, "SVD embedding needs order and delay >= 1");
  require(higuchi_kmax >= 2, "Higuchi k_max must be >= 2");
  require(code_order >= 2 && code_order % 2 == 0 && code_order <= 12,
          "code order must be even and in [2, 12]");
  require(welch_segment >= 2, "Welch segment must be >= 2");
  for (const auto& b : bands) {
    require(!b.name.empty() && b.lo_hz >= 0.0 && b.hi_hz > b.lo_hz,
            "frequency band '" + b.name + "' is malformed");
  }
}

const std::vector<std::string>& time_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v = kStatNames;
    for (const char* s :
         {"AbsMean", "Energy", "AveragePower", "RMS", "NE", "LineLength", "ShEn",
          "ApEn", "SampEn", "PE", "WPE", "FuzzEn", "DistEn", "SVDEn", "HE",
          "HiguchiFD", "BoxCountingFD", "DFA"}) {
      v.emplace_back(s);
    }
    v.insert(v.end(), kHjorthNames.begin(), kHjorthNames.end());
    v.emplace_back("ZeroCrossings");
    v.emplace_back("LocalExtrema");
    return v;
  }();
  return names;
}

bool is_time_feature(const std::string& name) {
  return contains(time_feature_names(), name);
}

std::vector<std::string> frequency_feature_names(const FeatureParams& params) {
  std::vector<std::string> v = {"IWMF",         "IWBW",          "SE",
                                "SEF50",        "SEF90",         "MedianFrequency",
                                "PeakFrequency", "PeakBandwidth", "PeakAmplitude",
                                "TotalPower"};
  for (const auto& b : params.bands) v.push_back("BandEnergy" + b.name);
  return v;
}

bool is_frequency_feature(const std::string& name, const FeatureParams& params) {
  return contains(frequency_feature_names(params), name);
}

bool is_histogram_feature(const std::string& name) {
  return name == "LBP" || name == "LNDP" || name == "LGP";
}

double template_tolerance(std::span<const double> x, const FeatureParams& params) {
  const double sd = sample_stddev(x);
  // A constant sequence matches at any tolerance; 1 keeps r > 0.
  return sd > 0.0 ? params.r_factor * sd : 1.0;
}

std::vector<double> time_features(const std::vector<std::string>& names,
                                  std::span<const double> x,
                                  const FeatureParams& params) {
  std::optional<StatSummary> stats;
  std::optional<Hjorth> hj;
  bool hjorth_undefined = false;
  std::vector<double> out;
  out.reserve(names.size());

  for (const auto& name : names) {
    if (contains(kStatNames, name)) {
      if (!stats) stats = stat_summary(x);
      const auto& s = *stats;
      const double v = name == "Mean"       ? s.mean
                       : name == "Variance" ? s.variance
                       : name == "CV"       ? s.cv
                       : name == "Skewness" ? s.skewness
                       : name == "Kurtosis" ? s.kurtosis
                       : name == "Min"      ? s.min
                       : name == "Max"      ? s.max
                       : name == "Median"   ? s.median
                       : name == "Mode"     ? s.mode
                       : name == "Q1"       ? s.q1
                       : name == "Q3"       ? s.q3
                                            : s.iqr;
      out.push_back(v);
      continue;
    }
    if (contains(kHjorthNames, name)) {
      if (!hj && !hjorth_undefined) {
        try {
          hj = hjorth(x);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::undefined_result) throw;
          hjorth_undefined = true;
        }
      }
      if (!hj) {
        out.push_back(kNaN);
      } else {
        out.push_back(name == "Activity"   ? hj->activity
                      : name == "Mobility" ? hj->mobility
                                           : hj->complexity);
      }
      continue;
    }
    try {
      out.push_back(time_feature(name, x, params));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_result) throw;
      out.push_back(kNaN);
    }
  }
  return out;
}

double time_feature(const std::string& name, std::span<const double> x,
                    const FeatureParams& p) {
  if (contains(kStatNames, name) || contains(kHjorthNames, name)) {
    if (contains(kHjorthNames, name)) {
      const auto h = hjorth(x);
      return name == "Activity" ? h.activity
             : name == "Mobility" ? h.mobility
                                  : h.complexity;
    }
    return time_features({name}, x, p).front();
  }
  if (name == "AbsMean") {
    std::vector<double> a(x.size());
    std::transform(x.begin(), x.end(), a.begin(), [](double v) { return std::abs(v); });
    return mean(a);
  }
  if (name == "Energy") return energy(x);
  if (name == "AveragePower") return average_power(x);
  if (name == "RMS") return rms(x);
  if (name == "NE") return nonlinear_energy(x);
  if (name == "LineLength") return line_length(x);
  if (name == "ShEn") return shannon_entropy(x, p.shannon_bins);
  if (name == "ApEn") return approximate_entropy(x, p.m, template_tolerance(x, p));
  if (name == "SampEn") return sample_entropy(x, p.m, template_tolerance(x, p));
  if (name == "FuzzEn") return fuzzy_entropy(x, p.m, template_tolerance(x, p));
  if (name == "DistEn") return distribution_entropy(x, p.m, p.distribution_bins);
  if (name == "PE") return permutation_entropy(x, p.pattern_order);
  if (name == "WPE") return weighted_permutation_entropy(x, p.pattern_order);
  if (name == "SVDEn") return svd_entropy(x, p.svd_order, p.svd_delay);
  if (name == "HE") return hurst_exponent(x);
  if (name == "HiguchiFD") return higuchi_fd(x, p.higuchi_kmax);
  if (name == "BoxCountingFD") return box_counting_fd(x);
  if (name == "DFA") return dfa(x);
  if (name == "ZeroCrossings") return static_cast<double>(zero_crossings(x));
  if (name == "LocalExtrema") return static_cast<double>(local_extrema(x));
  fail(ErrorCode::invalid_argument, "unknown time-domain feature '" + name + "'");
}

std::vector<double> frequency_features(const std::vector<std::string>& names,
                                       const Psd& psd,
                                       const FeatureParams& params) {
  std::optional<SpectralPeak> peak;
  std::vector<double> out;
  out.reserve(names.size());
  for (const auto& name : names) {
    try {
      if (name == "IWMF") {
        out.push_back(iwmf(psd));
      } else if (name == "IWBW") {
        out.push_back(iwbw(psd));
      } else if (name == "SE") {
        out.push_back(spectral_entropy(psd));
      } else if (name == "SEF50" || name == "MedianFrequency") {
        out.push_back(sef(psd, 50.0));
      } else if (name == "SEF90") {
        out.push_back(sef(psd, 90.0));
      } else if (name == "TotalPower") {
        out.push_back(psd.total_power);
      } else if (name == "PeakFrequency" || name == "PeakBandwidth" ||
                 name == "PeakAmplitude") {
        if (!peak) peak = peak_frequency(psd);
        out.push_back(name == "PeakFrequency"   ? peak->frequency
                      : name == "PeakBandwidth" ? peak->bandwidth
                                                : peak->amplitude);
      } else if (name.rfind("BandEnergy", 0) == 0) {
        const std::string band = name.substr(10);
        auto it = std::find_if(params.bands.begin(), params.bands.end(),
                               [&](const Band& b) { return b.name == band; });
        if (it == params.bands.end()) {
          fail(ErrorCode::invalid_argument, "unknown frequency band '" + band + "'");
        }
        out.push_back(band_energy(psd, it->lo_hz, it->hi_hz));
      } else {
        fail(ErrorCode::invalid_argument,
             "unknown frequency-domain feature '" + name + "'");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undefined_result) throw;
      out.push_back(kNaN);
    }
  }
  return out;
}

std::vector<double> histogram_feature(const std::string& name,
                                      std::span<const double> x,
                                      const FeatureParams& p) {
  if (name == "LBP") return lbp_histogram(x, p.code_order);
  if (name == "LNDP") return lndp_histogram(x, p.code_order);
  if (name == "LGP") return lgp_histogram(x, p.code_order);
  fail(ErrorCode::invalid_argument, "unknown histogram feature '" + name + "'");
}

}  // namespace eegfeat
