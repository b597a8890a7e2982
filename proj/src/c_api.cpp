#include "eegfeat/eegfeat.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>

#include "eegfeat/bench.hpp"
#include "eegfeat/catalog.hpp"
#include "eegfeat/config.hpp"
#include "eegfeat/edf.hpp"
#include "eegfeat/error.hpp"
#include "eegfeat/evaluation.hpp"
#include "eegfeat/pipeline.hpp"
#include "eegfeat/synth.hpp"

struct eegfeat_config {
  eegfeat::RunConfig cfg;
};

struct eegfeat_table {
  eegfeat::FeatureTable table;
};

struct eegfeat_bench {
  eegfeat::BenchReport report;
};

namespace {

thread_local std::string g_last_error;

std::mutex g_log_mutex;
eegfeat_log_fn g_log_fn = nullptr;
void* g_log_user = nullptr;

void log_message(const std::string& msg) {
  std::lock_guard lock(g_log_mutex);
  if (g_log_fn) {
    g_log_fn(msg.c_str(), g_log_user);
  } else {
    std::cerr << msg << '\n';
  }
}

eegfeat_status status_of(eegfeat::ErrorCode c) {
  switch (c) {
    case eegfeat::ErrorCode::invalid_argument: return EEGFEAT_ERR_INVALID_ARGUMENT;
    case eegfeat::ErrorCode::io: return EEGFEAT_ERR_IO;
    case eegfeat::ErrorCode::format: return EEGFEAT_ERR_FORMAT;
    case eegfeat::ErrorCode::undefined_result: return EEGFEAT_ERR_UNDEFINED;
  }
  return EEGFEAT_ERR_INTERNAL;
}

template <typename Fn>
eegfeat_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return EEGFEAT_OK;
  } catch (const eegfeat::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return EEGFEAT_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) eegfeat::fail(eegfeat::ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

std::vector<std::string> strings(const char* const* v, std::size_t n, const char* what) {
  std::vector<std::string> out;
  if (n > 0) need(v, what);
  for (std::size_t i = 0; i < n; ++i) {
    need(v[i], what);
    out.emplace_back(v[i]);
  }
  return out;
}

char* dup(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

const eegfeat::RunConfig& config_or_default(const eegfeat_config* cfg) {
  static const eegfeat::RunConfig defaults;
  return cfg ? cfg->cfg : defaults;
}

const double kDefaultStarts[] = {120.0, 400.0};
const double kDefaultEnds[] = {180.0, 460.0};

}  // namespace

extern "C" {

const char* eegfeat_last_error(void) { return g_last_error.c_str(); }

const char* eegfeat_version(void) { return "0.1.0"; }

void eegfeat_set_log(eegfeat_log_fn fn, void* user) {
  std::lock_guard lock(g_log_mutex);
  g_log_fn = fn;
  g_log_user = user;
}

void eegfeat_string_free(char* s) { std::free(s); }

eegfeat_status eegfeat_config_create(eegfeat_config** out) {
  return guarded([&] {
    need(out, "output handle");
    *out = new eegfeat_config{};
  });
}

eegfeat_status eegfeat_config_load(const char* path, eegfeat_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output handle");
    *out = new eegfeat_config{eegfeat::load_config(path)};
  });
}

eegfeat_status eegfeat_config_parse(const char* json, eegfeat_config** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "output handle");
    *out = new eegfeat_config{eegfeat::parse_config(json)};
  });
}

eegfeat_status eegfeat_config_set(eegfeat_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    eegfeat::set_config_value(cfg->cfg, key, value);
  });
}

eegfeat_status eegfeat_config_to_json(const eegfeat_config* cfg, char** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "output string");
    *out = dup(eegfeat::config_to_json(cfg->cfg));
  });
}

void eegfeat_config_destroy(eegfeat_config* cfg) { delete cfg; }

eegfeat_status eegfeat_extract(const eegfeat_config* cfg, const char* const* edf_paths,
                               size_t n_paths, const char* out_csv, size_t* rows_out) {
  return guarded([&] {
    need(out_csv, "output path");
    const auto paths = strings(edf_paths, n_paths, "input path");
    const auto table = eegfeat::run_extract(paths, out_csv, config_or_default(cfg), log_message);
    if (rows_out) *rows_out = table.rows();
  });
}

eegfeat_status eegfeat_evaluate(const eegfeat_config* cfg, const char* table_csv,
                                const char* out_csv, double* err0_out,
                                size_t* significant_out) {
  return guarded([&] {
    need(table_csv, "table path");
    need(out_csv, "output path");
    const auto res = eegfeat::run_evaluate(table_csv, out_csv, config_or_default(cfg));
    if (err0_out) *err0_out = res.err_0;
    if (significant_out) {
      *significant_out = static_cast<size_t>(std::count_if(
          res.reports.begin(), res.reports.end(), [](const auto& r) { return r.significant; }));
    }
  });
}

eegfeat_status eegfeat_select(const eegfeat_config* cfg, const char* table_csv,
                              const char* const* features, size_t n_features,
                              const char* out_csv, const char* out_json,
                              size_t* best_size_out, double* best_merit_out) {
  return guarded([&] {
    need(table_csv, "table path");
    need(out_csv, "output path");
    need(out_json, "JSON output path");
    const auto names = features ? strings(features, n_features, "feature") :
                                  std::vector<std::string>{};
    const auto trace =
        eegfeat::run_select(table_csv, out_csv, out_json, config_or_default(cfg), names);
    if (best_size_out) *best_size_out = trace.best_size;
    if (best_merit_out) *best_merit_out = trace.merits.at(trace.best_size - 1);
  });
}

void eegfeat_synth_params_default(eegfeat_synth_params* p) {
  if (!p) return;
  const eegfeat::SynthSpec d;
  p->duration_s = d.duration_s;
  p->fs = d.fs;
  p->background_rms = d.background_rms;
  p->amplitude_factor = d.amplitude_factor;
  p->seizure_starts_s = kDefaultStarts;
  p->seizure_ends_s = kDefaultEnds;
  p->n_seizures = 2;
  p->seed = d.seed;
}

eegfeat_status eegfeat_synth(const eegfeat_synth_params* p, const char* edf_path) {
  return guarded([&] {
    need(p, "synth parameters");
    need(edf_path, "output path");
    eegfeat::SynthSpec spec;
    spec.duration_s = p->duration_s;
    spec.fs = p->fs;
    spec.background_rms = p->background_rms;
    spec.amplitude_factor = p->amplitude_factor;
    spec.seed = p->seed;
    spec.seizures.clear();
    if (p->n_seizures > 0) {
      need(p->seizure_starts_s, "seizure starts");
      need(p->seizure_ends_s, "seizure ends");
    }
    for (size_t i = 0; i < p->n_seizures; ++i) {
      spec.seizures.push_back({p->seizure_starts_s[i], p->seizure_ends_s[i]});
    }
    const auto record = eegfeat::synth_record(spec);
    const std::string edf(edf_path);
    const std::string ann = eegfeat::annotation_path_for(edf);
    try {
      eegfeat::write_edf(record, edf);
      eegfeat::write_annotations(record.annotations(), ann);
    } catch (...) {
      std::remove(edf.c_str());
      std::remove(ann.c_str());
      throw;
    }
  });
}

eegfeat_status eegfeat_bench_run(const char* const* features, size_t n_features,
                                 const size_t* sizes, size_t n_sizes, uint64_t seed,
                                 eegfeat_bench** out) {
  return guarded([&] {
    need(out, "output handle");
    eegfeat::BenchConfig bc;
    if (features) bc.features = strings(features, n_features, "feature");
    if (sizes) bc.sizes.assign(sizes, sizes + n_sizes);
    bc.seed = seed;
    *out = new eegfeat_bench{eegfeat::run_bench(bc)};
  });
}

size_t eegfeat_bench_feature_count(const eegfeat_bench* b) {
  return b ? b->report.slopes.size() : 0;
}

eegfeat_status eegfeat_bench_slope(const eegfeat_bench* b, size_t i, const char** feature,
                                   const char** complexity, double* slope) {
  return guarded([&] {
    need(b, "benchmark");
    eegfeat::require(i < b->report.slopes.size(), "benchmark feature index out of range");
    const auto& s = b->report.slopes[i];
    if (feature) *feature = s.feature.c_str();
    if (complexity) *complexity = s.complexity.c_str();
    if (slope) *slope = s.slope;
  });
}

eegfeat_status eegfeat_bench_write_csv(const eegfeat_bench* b, const char* path) {
  return guarded([&] {
    need(b, "benchmark");
    if (!path) {
      eegfeat::write_bench_csv(std::cout, b->report);
      std::cout.flush();
      return;
    }
    eegfeat::write_file_atomic(
        path, [&](std::ostream& os) { eegfeat::write_bench_csv(os, b->report); });
  });
}

void eegfeat_bench_destroy(eegfeat_bench* b) { delete b; }

eegfeat_status eegfeat_table_load(const char* path, eegfeat_table** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output handle");
    *out = new eegfeat_table{eegfeat::read_feature_table_file(path)};
  });
}

size_t eegfeat_table_rows(const eegfeat_table* t) { return t ? t->table.rows() : 0; }

size_t eegfeat_table_columns(const eegfeat_table* t) {
  return t ? t->table.columns().size() : 0;
}

const char* eegfeat_table_column_name(const eegfeat_table* t, size_t i) {
  if (!t || i >= t->table.columns().size()) return nullptr;
  return t->table.columns()[i].c_str();
}

eegfeat_status eegfeat_table_column(const eegfeat_table* t, size_t i, double* values,
                                    size_t capacity) {
  return guarded([&] {
    need(t, "table");
    eegfeat::require(i < t->table.columns().size(), "column index out of range");
    const auto col = t->table.column(i);
    if (capacity > 0) need(values, "values");
    std::copy_n(col.begin(), std::min(capacity, col.size()), values);
  });
}

eegfeat_status eegfeat_table_label(const eegfeat_table* t, size_t row, int* label) {
  return guarded([&] {
    need(t, "table");
    need(label, "label");
    eegfeat::require(row < t->table.rows(), "row index out of range");
    *label = static_cast<int>(t->table.labels()[row]);
  });
}

void eegfeat_table_destroy(eegfeat_table* t) { delete t; }

eegfeat_status eegfeat_feature(const eegfeat_config* cfg, const char* name, const double* x,
                               size_t n, double fs, double* out) {
  return guarded([&] {
    need(name, "feature name");
    need(out, "output");
    if (n > 0) need(x, "samples");
    const auto& c = config_or_default(cfg);
    const std::span<const double> s(x, n);
    if (eegfeat::is_time_feature(name)) {
      *out = eegfeat::time_feature(name, s, c.params);
      return;
    }
    if (eegfeat::is_frequency_feature(name, c.params)) {
      eegfeat::WelchConfig wc{std::min(c.params.welch_segment, n), c.params.welch_overlap};
      const auto psd = eegfeat::psd_welch(s, fs, wc);
      *out = eegfeat::frequency_features({name}, psd, c.params).front();
      if (std::isnan(*out)) {
        eegfeat::fail(eegfeat::ErrorCode::undefined_result,
                      std::string(name) + " is undefined for this input");
      }
      return;
    }
    eegfeat::fail(eegfeat::ErrorCode::invalid_argument,
                  std::string("unknown scalar feature '") + name + "'");
  });
}

eegfeat_status eegfeat_bayes_error(const double* seizure, size_t n_seizure,
                                   const double* normal, size_t n_normal, double* out) {
  return guarded([&] {
    need(out, "output");
    if (n_seizure > 0) need(seizure, "seizure samples");
    if (n_normal > 0) need(normal, "normal samples");
    const auto model = eegfeat::fit_kde({std::vector<double>(seizure, seizure + n_seizure),
                                         std::vector<double>(normal, normal + n_normal)});
    *out = eegfeat::bayes_error(model);
  });
}

eegfeat_status eegfeat_err0(size_t n_seizure, size_t n_normal, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = eegfeat::err0(n_seizure, n_normal);
  });
}

}  // extern "C"
