#include "eegfeat/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "eegfeat/error.hpp"

namespace eegfeat {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::invalid_argument, "config key '" + key + "' has the wrong type");
  }
}

std::vector<std::string> string_list(const json& j, const std::string& key) {
  if (j.is_string()) return split_list(j.get<std::string>());
  return get_as<std::vector<std::string>>(j, key);
}

void apply_params(FeatureParams& p, const json& j) {
  if (!j.is_object()) fail(ErrorCode::invalid_argument, "config 'params' must be an object");
  for (const auto& [k, v] : j.items()) {
    const std::string key = "params." + k;
    if (k == "m") p.m = get_as<int>(v, key);
    else if (k == "r_factor") p.r_factor = get_as<double>(v, key);
    else if (k == "shannon_bins") p.shannon_bins = get_as<int>(v, key);
    else if (k == "pattern_order") p.pattern_order = get_as<int>(v, key);
    else if (k == "distribution_bins") p.distribution_bins = get_as<int>(v, key);
    else if (k == "svd_order") p.svd_order = get_as<int>(v, key);
    else if (k == "svd_delay") p.svd_delay = get_as<int>(v, key);
    else if (k == "higuchi_kmax") p.higuchi_kmax = get_as<int>(v, key);
    else if (k == "code_order") p.code_order = get_as<int>(v, key);
    else if (k == "welch_segment") p.welch_segment = get_as<std::size_t>(v, key);
    else if (k == "welch_overlap") p.welch_overlap = get_as<double>(v, key);
    else if (k == "bands") {
      p.bands.clear();
      for (const auto& b : v) {
        if (!b.is_array() || b.size() != 3) {
          fail(ErrorCode::invalid_argument, "each band must be [name, lo_hz, hi_hz]");
        }
        p.bands.push_back({get_as<std::string>(b[0], key), get_as<double>(b[1], key),
                           get_as<double>(b[2], key)});
      }
    } else {
      fail(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    }
  }
}

void apply(RunConfig& cfg, const std::string& k, const json& v) {
  if (k == "width_s") cfg.width_s = get_as<double>(v, k);
  else if (k == "stride_s") cfg.stride_s = get_as<double>(v, k);
  else if (k == "wavelet") cfg.wavelet = parse_wavelet(get_as<std::string>(v, k));
  else if (k == "levels") cfg.levels = get_as<int>(v, k);
  else if (k == "features") cfg.features = string_list(v, k);
  else if (k == "montage") {
    if (!v.is_object() || !v.contains("left") || !v.contains("right")) {
      fail(ErrorCode::invalid_argument, "config 'montage' needs 'left' and 'right' lists");
    }
    cfg.montage.left = string_list(v["left"], "montage.left");
    cfg.montage.right = string_list(v["right"], "montage.right");
  } else if (k == "kde_grid") cfg.kde_grid = get_as<std::size_t>(v, k);
  else if (k == "cfs_bins") cfg.cfs_bins = get_as<int>(v, k);
  else if (k == "cfs_max_size") cfg.cfs_max_size = get_as<std::size_t>(v, k);
  else if (k == "threshold") cfg.threshold = get_as<double>(v, k);
  else if (k == "threads") cfg.threads = get_as<unsigned>(v, k);
  else if (k == "seed") cfg.seed = get_as<std::uint64_t>(v, k);
  else if (k == "params") apply_params(cfg.params, v);
  else if (k.rfind("params.", 0) == 0) apply_params(cfg.params, json{{k.substr(7), v}});
  else fail(ErrorCode::invalid_argument, "unknown config key '" + k + "'");
}

}  // namespace

std::vector<std::string> default_features() {
  std::vector<std::string> v = {
      "Mean",     "Variance", "CV",          "Skewness",     "Kurtosis", "Max",
      "Min",      "Energy",   "NE",          "LineLength",   "ShEn",     "ApEn",
      "SampEn",   "ZeroCrossings", "LocalExtrema", "Mobility", "Complexity",
      "IWMF",     "IWBW",     "SE",          "PeakFrequency", "PeakAmplitude"};
  for (const auto& f : default_subband_features()) v.push_back("dwt:" + f);
  return v;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void RunConfig::validate() const {
  require(width_s > 0.0 && stride_s > 0.0, "epoch width and stride must be > 0");
  require(levels >= 1 && levels <= 16, "wavelet levels must be in [1, 16]");
  require(!features.empty(), "feature list is empty");
  montage.validate();
  require(kde_grid >= 16, "KDE grid needs at least 16 points");
  require(cfs_bins >= 2, "CFS bin count must be >= 2");
  require(cfs_max_size >= 1, "CFS max subset size must be >= 1");
  require(threshold >= 0.0, "significance threshold must be >= 0");
  params.validate();
}

unsigned RunConfig::worker_count() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::format, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::format, "config must be a JSON object");
  RunConfig cfg;
  for (const auto& [k, v] : j.items()) apply(cfg, k, v);
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json bands = json::array();
  for (const auto& b : cfg.params.bands) bands.push_back({b.name, b.lo_hz, b.hi_hz});
  const auto& p = cfg.params;
  json j = {
      {"width_s", cfg.width_s},
      {"stride_s", cfg.stride_s},
      {"wavelet", to_string(cfg.wavelet)},
      {"levels", cfg.levels},
      {"features", cfg.features},
      {"montage", {{"left", cfg.montage.left}, {"right", cfg.montage.right}}},
      {"kde_grid", cfg.kde_grid},
      {"cfs_bins", cfg.cfs_bins},
      {"cfs_max_size", cfg.cfs_max_size},
      {"threshold", cfg.threshold},
      {"threads", cfg.threads},
      {"seed", cfg.seed},
      {"params",
       {{"m", p.m},
        {"r_factor", p.r_factor},
        {"shannon_bins", p.shannon_bins},
        {"pattern_order", p.pattern_order},
        {"distribution_bins", p.distribution_bins},
        {"svd_order", p.svd_order},
        {"svd_delay", p.svd_delay},
        {"higuchi_kmax", p.higuchi_kmax},
        {"code_order", p.code_order},
        {"welch_segment", p.welch_segment},
        {"welch_overlap", p.welch_overlap},
        {"bands", bands}}}};
  return j.dump(2);
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  json v = json::parse(value, nullptr, false);
  if (v.is_discarded()) v = value;
  RunConfig next = cfg;
  apply(next, key, v);
  next.validate();
  cfg = std::move(next);
}

}  // namespace eegfeat
