#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eegfeat/eegfeat.h"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> features, wavelet;
  std::optional<int> levels;
  std::optional<double> width, stride;
  std::optional<unsigned> threads;
  std::optional<unsigned long long> seed;
};

void add_overrides(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--features", o.features, "comma-separated feature selectors");
  sub->add_option("--wavelet", o.wavelet, "D4 or D8");
  sub->add_option("--levels", o.levels, "wavelet decomposition levels");
  sub->add_option("--width", o.width, "epoch width in seconds");
  sub->add_option("--stride", o.stride, "epoch stride in seconds");
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  sub->add_option("--seed", o.seed, "random seed");
}

[[noreturn]] void die(const char* what) {
  std::fprintf(stderr, "eegfeat: %s: %s\n", what, eegfeat_last_error());
  std::exit(1);
}

void check(eegfeat_status s, const char* what) {
  if (s != EEGFEAT_OK) die(what);
}

struct Config {
  eegfeat_config* handle = nullptr;
  ~Config() { eegfeat_config_destroy(handle); }
};

void set(eegfeat_config* cfg, const char* key, const std::string& value) {
  check(eegfeat_config_set(cfg, key, value.c_str()), key);
}

void build_config(Config& c, const Overrides& o) {
  if (o.config.empty()) {
    check(eegfeat_config_create(&c.handle), "config");
  } else {
    check(eegfeat_config_load(o.config.c_str(), &c.handle), "config");
  }
  if (o.features) set(c.handle, "features", *o.features);
  if (o.wavelet) set(c.handle, "wavelet", "\"" + *o.wavelet + "\"");
  if (o.levels) set(c.handle, "levels", std::to_string(*o.levels));
  if (o.width) set(c.handle, "width_s", std::to_string(*o.width));
  if (o.stride) set(c.handle, "stride_s", std::to_string(*o.stride));
  if (o.threads) set(c.handle, "threads", std::to_string(*o.threads));
  if (o.seed) set(c.handle, "seed", std::to_string(*o.seed));
}

std::string json_path_for(const std::string& csv) {
  const auto dot = csv.rfind('.');
  const auto slash = csv.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return csv.substr(0, dot) + ".json";
  }
  return csv + ".json";
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG seizure feature extraction and evaluation"};
  app.set_version_flag("--version", std::string(eegfeat_version()));
  app.require_subcommand(1);

  Overrides ex_o;
  std::vector<std::string> ex_inputs;
  std::string ex_out;
  auto* extract = app.add_subcommand("extract", "EDF recordings -> feature table CSV");
  add_overrides(extract, ex_o);
  extract->add_option("--input", ex_inputs, "EDF file (repeatable); annotations in <file>.ann")
      ->required()
      ->check(CLI::ExistingFile);
  extract->add_option("--out", ex_out, "feature table CSV")->required();

  Overrides ev_o;
  std::string ev_in, ev_out;
  auto* evaluate = app.add_subcommand("evaluate", "feature table -> significance report CSV");
  add_overrides(evaluate, ev_o);
  evaluate->add_option("--input", ev_in, "feature table CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", ev_out, "significance report CSV")->required();

  Overrides se_o;
  std::string se_in, se_out, se_json;
  std::optional<std::size_t> se_max;
  std::vector<std::string> se_columns;
  auto* select = app.add_subcommand("select", "feature table -> CFS merit trace and best subset");
  add_overrides(select, se_o);
  select->add_option("--input", se_in, "feature table CSV")->required()->check(CLI::ExistingFile);
  select->add_option("--out", se_out, "merit trace CSV")->required();
  select->add_option("--json", se_json, "best-subset JSON (default: <out>.json)");
  select->add_option("--max-size", se_max, "largest subset considered");
  select->add_option("--columns", se_columns, "candidate table columns (default: all)")
      ->delimiter(',');

  eegfeat_synth_params sp;
  eegfeat_synth_params_default(&sp);
  std::string sy_out;
  std::vector<std::string> sy_seizures;
  unsigned long long sy_seed = sp.seed;
  auto* synth = app.add_subcommand("synth", "write a synthetic EDF record and annotations");
  synth->add_option("--out", sy_out, "EDF path; annotations go to <out>.ann")->required();
  synth->add_option("--duration", sp.duration_s, "seconds")->capture_default_str();
  synth->add_option("--fs", sp.fs, "sampling rate, Hz")->capture_default_str();
  synth->add_option("--rms", sp.background_rms, "background RMS")->capture_default_str();
  synth->add_option("--amplitude", sp.amplitude_factor, "seizure RMS factor k")
      ->capture_default_str();
  synth->add_option("--seizure", sy_seizures, "START,END in seconds (repeatable)");
  synth->add_option("--seed", sy_seed, "random seed")->capture_default_str();

  std::vector<std::string> be_features;
  std::vector<std::size_t> be_sizes;
  std::string be_out;
  unsigned long long be_seed = 1;
  auto* bench = app.add_subcommand("bench", "runtime vs N per feature with log-log slope");
  bench->add_option("--features", be_features, "kernels (default: all)")->delimiter(',');
  bench->add_option("--sizes", be_sizes, "signal lengths")->delimiter(',');
  bench->add_option("--out", be_out, "CSV path (default: stdout)");
  bench->add_option("--seed", be_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  if (*extract) {
    Config c;
    build_config(c, ex_o);
    const auto paths = c_strings(ex_inputs);
    size_t rows = 0;
    check(eegfeat_extract(c.handle, paths.data(), paths.size(), ex_out.c_str(), &rows),
          "extract");
    std::printf("wrote %zu epochs to %s\n", rows, ex_out.c_str());
  } else if (*evaluate) {
    Config c;
    build_config(c, ev_o);
    double e0 = 0.0;
    size_t significant = 0;
    check(eegfeat_evaluate(c.handle, ev_in.c_str(), ev_out.c_str(), &e0, &significant),
          "evaluate");
    std::printf("err_0 = %.4f\n", e0);
    std::printf("%zu significant feature/hemisphere pairs; report in %s\n", significant,
                ev_out.c_str());
  } else if (*select) {
    Config c;
    build_config(c, se_o);
    if (se_max) set(c.handle, "cfs_max_size", std::to_string(*se_max));
    if (se_json.empty()) se_json = json_path_for(se_out);
    const auto cols = c_strings(se_columns);
    size_t best_size = 0;
    double best_merit = 0.0;
    check(eegfeat_select(c.handle, se_in.c_str(), cols.empty() ? nullptr : cols.data(),
                         cols.size(), se_out.c_str(), se_json.c_str(), &best_size,
                         &best_merit),
          "select");
    std::printf("best subset size %zu, merit %.6g; trace in %s, subset in %s\n", best_size,
                best_merit, se_out.c_str(), se_json.c_str());
  } else if (*synth) {
    std::vector<double> starts, ends;
    if (synth->count("--seizure") > 0) {
      for (const auto& s : sy_seizures) {
        double a = 0.0, b = 0.0;
        char tail = 0;
        if (std::sscanf(s.c_str(), "%lf,%lf%c", &a, &b, &tail) != 2) {
          std::fprintf(stderr, "eegfeat: synth: --seizure expects START,END, got '%s'\n",
                       s.c_str());
          return 1;
        }
        starts.push_back(a);
        ends.push_back(b);
      }
      sp.seizure_starts_s = starts.data();
      sp.seizure_ends_s = ends.data();
      sp.n_seizures = starts.size();
    }
    sp.seed = sy_seed;
    check(eegfeat_synth(&sp, sy_out.c_str()), "synth");
    std::printf("wrote %s and %s.ann\n", sy_out.c_str(), sy_out.c_str());
  } else if (*bench) {
    const auto feats = c_strings(be_features);
    eegfeat_bench* b = nullptr;
    check(eegfeat_bench_run(feats.empty() ? nullptr : feats.data(), feats.size(),
                            be_sizes.empty() ? nullptr : be_sizes.data(), be_sizes.size(),
                            be_seed, &b),
          "bench");
    const eegfeat_status s = eegfeat_bench_write_csv(b, be_out.empty() ? nullptr : be_out.c_str());
    if (s == EEGFEAT_OK && !be_out.empty()) {
      for (size_t i = 0; i < eegfeat_bench_feature_count(b); ++i) {
        const char* name = nullptr;
        const char* cx = nullptr;
        double slope = 0.0;
        eegfeat_bench_slope(b, i, &name, &cx, &slope);
        std::printf("%-14s %-9s slope %.3f\n", name, cx, slope);
      }
    }
    eegfeat_bench_destroy(b);
    check(s, "bench");
  }
  return 0;
}
