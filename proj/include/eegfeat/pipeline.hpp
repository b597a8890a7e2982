#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eegfeat/cfs.hpp"
#include "eegfeat/config.hpp"
#include "eegfeat/evaluation.hpp"
#include "eegfeat/feature_table.hpp"
#include "eegfeat/signal.hpp"

namespace eegfeat {

using LogSink = std::function<void(const std::string&)>;

// Per-channel column stems for the configured feature selectors, in output
// order. Each stem becomes two table columns, <stem>L and <stem>R.
std::vector<std::string> feature_stems(const RunConfig& cfg);

// Feature matrix of one channel, [epoch][stem].
std::vector<std::vector<double>> channel_features(std::span<const Epoch> epochs,
                                                  const RunConfig& cfg);

// Segments, labels and featurizes one record. Montage channels absent from
// the record are skipped (and reported through `log`); non-finite channel
// values are left out of the hemisphere mean.
FeatureTable extract_features(const Record& record, const std::string& record_name,
                              const RunConfig& cfg, const LogSink& log = {});

// Sidecar annotation path for an EDF file.
std::string annotation_path_for(const std::string& edf_path);

// Reads each EDF (with its sidecar annotations when present), extracts
// features and writes one CSV. The output appears only on success.
FeatureTable run_extract(const std::vector<std::string>& edf_paths,
                         const std::string& out_csv, const RunConfig& cfg,
                         const LogSink& log = {});

struct EvaluationResult {
  double err_0 = 0.0;
  std::vector<SignificanceReport> reports;
};
EvaluationResult run_evaluate(const std::string& table_csv, const std::string& out_csv,
                              const RunConfig& cfg);

// Candidate features are all table columns, or `features` when non-empty.
MeritTrace run_select(const std::string& table_csv, const std::string& out_csv,
                      const std::string& out_json, const RunConfig& cfg,
                      const std::vector<std::string>& features = {});

// Runs `writer` into <path>.tmp and renames it over `path`; the temporary is
// removed on failure.
void write_file_atomic(const std::string& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace eegfeat
