#include "eegfeat/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "eegfeat/edf.hpp"
#include "eegfeat/error.hpp"
#include "eegfeat/spectral.hpp"
#include "eegfeat/wavelet.hpp"
#include "parallel.hpp"

namespace eegfeat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Plan {
  std::vector<std::string> stems;
  std::vector<std::string> time_names;
  std::vector<std::size_t> time_pos;
  std::vector<std::string> freq_names;
  std::vector<std::size_t> freq_pos;
  std::vector<Band> ratio_bands;
  std::vector<std::size_t> ratio_pos;
  std::vector<std::string> hist_names;
  std::vector<std::size_t> hist_pos;
  std::vector<std::string> dwt_names;
  std::vector<std::size_t> dwt_pos;  // first band; band b sits at pos + b
  std::size_t dwt_bands = 0;
};

std::string code_column(const std::string& name, std::size_t code, std::size_t n_codes) {
  const auto width = std::to_string(n_codes - 1).size();
  std::string digits = std::to_string(code);
  return name + std::string(width - digits.size(), '0') + digits;
}

Plan make_plan(const RunConfig& cfg) {
  Plan p;
  const auto& params = cfg.params;
  const std::size_t n_codes = std::size_t{1} << params.code_order;
  std::vector<std::string> band_names;
  for (int l = 1; l <= cfg.levels; ++l) band_names.push_back("D" + std::to_string(l));
  band_names.push_back("A" + std::to_string(cfg.levels));
  p.dwt_bands = band_names.size();

  for (const auto& sel : cfg.features) {
    if (sel.rfind("dwt:", 0) == 0) {
      const std::string name = sel.substr(4);
      if (!is_time_feature(name)) {
        fail(ErrorCode::invalid_argument,
             "feature selector '" + sel + "' names no time-domain feature");
      }
      p.dwt_names.push_back(name);
      p.dwt_pos.push_back(p.stems.size());
      for (const auto& b : band_names) p.stems.push_back(name + b);
    } else if (sel.rfind("PowerRatio", 0) == 0) {
      const std::string band = sel.substr(10);
      const auto it = std::find_if(params.bands.begin(), params.bands.end(),
                                   [&](const Band& b) { return b.name == band; });
      if (it == params.bands.end()) {
        fail(ErrorCode::invalid_argument,
             "feature selector '" + sel + "' names no configured band");
      }
      p.ratio_bands.push_back(*it);
      p.ratio_pos.push_back(p.stems.size());
      p.stems.push_back(sel);
    } else if (is_histogram_feature(sel)) {
      p.hist_names.push_back(sel);
      p.hist_pos.push_back(p.stems.size());
      for (std::size_t c = 0; c < n_codes; ++c) p.stems.push_back(code_column(sel, c, n_codes));
    } else if (is_time_feature(sel)) {
      p.time_names.push_back(sel);
      p.time_pos.push_back(p.stems.size());
      p.stems.push_back(sel);
    } else if (is_frequency_feature(sel, params)) {
      p.freq_names.push_back(sel);
      p.freq_pos.push_back(p.stems.size());
      p.stems.push_back(sel);
    } else {
      fail(ErrorCode::invalid_argument, "unknown feature selector '" + sel + "'");
    }
  }
  std::set<std::string> seen;
  for (const auto& s : p.stems) {
    if (!seen.insert(s).second) {
      fail(ErrorCode::invalid_argument, "feature column '" + s + "' is selected twice");
    }
  }
  return p;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string record_name_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

std::vector<std::string> feature_stems(const RunConfig& cfg) { return make_plan(cfg).stems; }

std::vector<std::vector<double>> channel_features(std::span<const Epoch> epochs,
                                                  const RunConfig& cfg) {
  const Plan p = make_plan(cfg);
  const auto& params = cfg.params;
  const bool need_psd = !p.freq_names.empty() || !p.ratio_bands.empty();
  std::vector<std::vector<double>> ratio_history(p.ratio_bands.size());
  std::vector<std::vector<double>> out;
  out.reserve(epochs.size());

  for (const auto& epoch : epochs) {
    const auto x = epoch.samples();
    std::vector<double> row(p.stems.size(), kNaN);

    const auto tv = time_features(p.time_names, x, params);
    for (std::size_t i = 0; i < tv.size(); ++i) row[p.time_pos[i]] = tv[i];

    if (need_psd) {
      WelchConfig wc{std::min(params.welch_segment, x.size()), params.welch_overlap};
      const Psd psd = psd_welch(x, epoch.fs(), wc);
      const auto fv = frequency_features(p.freq_names, psd, params);
      for (std::size_t i = 0; i < fv.size(); ++i) row[p.freq_pos[i]] = fv[i];
      for (std::size_t i = 0; i < p.ratio_bands.size(); ++i) {
        const auto& b = p.ratio_bands[i];
        const double current = band_energy(psd, b.lo_hz, b.hi_hz);
        auto& hist = ratio_history[i];
        const double background = hist.empty() ? current : background_band_power(hist);
        try {
          row[p.ratio_pos[i]] = power_ratio(current, background);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::undefined_result) throw;
        }
        hist.push_back(current);
      }
    }

    for (std::size_t i = 0; i < p.hist_names.size(); ++i) {
      const auto h = histogram_feature(p.hist_names[i], x, params);
      std::copy(h.begin(), h.end(), row.begin() + static_cast<std::ptrdiff_t>(p.hist_pos[i]));
    }

    if (!p.dwt_names.empty()) {
      const auto decomp = dwt(x, cfg.wavelet, cfg.levels);
      std::size_t b = 0;
      for (const auto& [band, coeffs] : decomp.bands()) {
        const auto dv = time_features(p.dwt_names, coeffs, params);
        for (std::size_t i = 0; i < dv.size(); ++i) row[p.dwt_pos[i] + b] = dv[i];
        ++b;
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

FeatureTable extract_features(const Record& record, const std::string& record_name,
                              const RunConfig& cfg, const LogSink& log) {
  cfg.validate();
  const auto stems = feature_stems(cfg);

  std::map<std::string, std::size_t> by_label;
  for (std::size_t i = 0; i < record.channels().size(); ++i) {
    by_label.emplace(upper(record.channels()[i]), i);
  }
  std::vector<std::string> names;
  std::vector<std::vector<double>> data;
  std::size_t n_left = 0, n_right = 0;
  auto take = [&](const std::vector<std::string>& side, std::size_t& count) {
    for (const auto& ch : side) {
      const auto it = by_label.find(upper(ch));
      if (it == by_label.end()) {
        if (log) log(record_name + ": montage channel " + ch + " not present, skipped");
        continue;
      }
      names.push_back(ch);
      const auto src = record.channel(it->second);
      data.emplace_back(src.begin(), src.end());
      ++count;
    }
  };
  take(cfg.montage.left, n_left);
  take(cfg.montage.right, n_right);
  if (n_left == 0 || n_right == 0) {
    fail(ErrorCode::invalid_argument,
         record_name + ": no " + (n_left == 0 ? "left" : "right") +
             "-hemisphere montage channels present");
  }
  const Record sub(names, std::move(data), record.fs(), record.annotations());
  const auto epochs = segment(sub, cfg.width_s, cfg.stride_s);

  std::vector<std::vector<std::vector<double>>> per_channel(epochs.size());
  detail::parallel_for(epochs.size(), cfg.worker_count(), [&](std::size_t c) {
    per_channel[c] = channel_features(epochs[c], cfg);
  });

  std::vector<std::string> columns;
  for (const auto& s : stems) {
    columns.push_back(s + "L");
    columns.push_back(s + "R");
  }
  FeatureTable table(columns);
  const std::size_t n_epochs = epochs.front().size();
  auto side_mean = [&](std::size_t e, std::size_t k, std::size_t from, std::size_t to) {
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t c = from; c < to; ++c) {
      const double v = per_channel[c][e][k];
      if (!std::isfinite(v)) continue;
      acc += v;
      ++used;
    }
    return used ? acc / static_cast<double>(used) : kNaN;
  };
  for (std::size_t e = 0; e < n_epochs; ++e) {
    std::vector<double> values;
    values.reserve(columns.size());
    for (std::size_t k = 0; k < stems.size(); ++k) {
      values.push_back(side_mean(e, k, 0, n_left));
      values.push_back(side_mean(e, k, n_left, n_left + n_right));
    }
    const auto& ep = epochs.front()[e];
    table.add_row(record_name, ep.start_time(), label_epoch(ep, sub.annotations()),
                  std::move(values));
  }
  return table;
}

std::string annotation_path_for(const std::string& edf_path) { return edf_path + ".ann"; }

void write_file_atomic(const std::string& path,
                       const std::function<void(std::ostream&)>& writer) {
  const std::string tmp = path + ".tmp";
  try {
    {
      std::ofstream os(tmp, std::ios::binary);
      if (!os) fail(ErrorCode::io, "cannot write " + tmp);
      writer(os);
      os.flush();
      if (!os) fail(ErrorCode::io, "failed writing " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(ErrorCode::io, "cannot move " + tmp + " to " + path + ": " + ec.message());
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

FeatureTable run_extract(const std::vector<std::string>& edf_paths,
                         const std::string& out_csv, const RunConfig& cfg,
                         const LogSink& log) {
  require(!edf_paths.empty(), "extract needs at least one input EDF");
  std::optional<FeatureTable> all;
  for (const auto& path : edf_paths) {
    const auto ann_path = annotation_path_for(path);
    std::vector<Interval> ann;
    if (std::filesystem::exists(ann_path)) {
      ann = read_annotations(ann_path);
    } else if (log) {
      log(path + ": no annotation file " + ann_path + ", all epochs normal");
    }
    const Record record = read_edf(path, ann);
    auto table = extract_features(record, record_name_of(path), cfg, log);
    if (log) {
      log(path + ": " + std::to_string(table.rows()) + " epochs, " +
          std::to_string(table.count(EpochLabel::seizure)) + " seizure");
    }
    if (!all) {
      all = std::move(table);
      continue;
    }
    for (std::size_t r = 0; r < table.rows(); ++r) {
      std::vector<double> row(table.columns().size());
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = table.column(c)[r];
      all->add_row(table.records()[r], table.epoch_starts()[r], table.labels()[r],
                   std::move(row));
    }
  }
  write_file_atomic(out_csv, [&](std::ostream& os) { write_feature_table(os, *all); });
  return *all;
}

EvaluationResult run_evaluate(const std::string& table_csv, const std::string& out_csv,
                              const RunConfig& cfg) {
  cfg.validate();
  const auto table = read_feature_table_file(table_csv);
  EvaluationResult res;
  res.err_0 = err0(table.count(EpochLabel::seizure), table.count(EpochLabel::normal));
  QuadratureGrid grid;
  grid.points = cfg.kde_grid;
  res.reports = evaluate_table(table, cfg.threshold, grid, cfg.worker_count());
  write_file_atomic(out_csv, [&](std::ostream& os) { write_significance_csv(os, res.reports); });
  return res;
}

MeritTrace run_select(const std::string& table_csv, const std::string& out_csv,
                      const std::string& out_json, const RunConfig& cfg,
                      const std::vector<std::string>& features) {
  cfg.validate();
  const auto table = read_feature_table_file(table_csv);
  const auto& names = features.empty() ? table.columns() : features;
  const auto corr = correlations(table, names, cfg.cfs_bins, cfg.worker_count());
  const auto trace = forward_search(corr, std::min(cfg.cfs_max_size, names.size()));
  write_file_atomic(out_csv, [&](std::ostream& os) { write_merit_trace_csv(os, trace); });
  try {
    write_file_atomic(out_json, [&](std::ostream& os) { os << best_subset_json(trace) << '\n'; });
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(out_csv, ec);
    throw;
  }
  return trace;
}

}  // namespace eegfeat
