#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegfeat/catalog.hpp"
#include "eegfeat/signal.hpp"
#include "eegfeat/wavelet.hpp"

namespace eegfeat {

// Feature selectors, expanded per channel into column stems:
//   <time or frequency feature>    one column
//   PowerRatio<Band>               band power over the running background
//   LBP | LNDP | LGP               2^code_order columns, e.g. LBP00..LBP63
//   dwt:<time feature>             one column per sub-band, e.g. EnergyD1
std::vector<std::string> default_features();

struct RunConfig {
  double width_s = 4.0;
  double stride_s = 1.0;
  Wavelet wavelet = Wavelet::d4;
  int levels = 5;
  std::vector<std::string> features = default_features();
  Montage montage = default_montage();
  std::size_t kde_grid = 4096;
  int cfs_bins = 10;
  std::size_t cfs_max_size = 10;
  double threshold = 4.5;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::uint64_t seed = 1;
  FeatureParams params;

  void validate() const;
  unsigned worker_count() const;
};

// JSON object with any subset of the RunConfig keys; missing keys keep their
// defaults, unknown keys are rejected.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

// Sets one key. `value` is read as JSON when it parses, otherwise as a plain
// string; "features" also accepts a comma-separated list.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace eegfeat
