#ifndef EEGFEAT_EEGFEAT_H
#define EEGFEAT_EEGFEAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eegfeat_status {
  EEGFEAT_OK = 0,
  EEGFEAT_ERR_INVALID_ARGUMENT = 1,
  EEGFEAT_ERR_IO = 2,
  EEGFEAT_ERR_FORMAT = 3,
  EEGFEAT_ERR_UNDEFINED = 4,
  EEGFEAT_ERR_INTERNAL = 5
} eegfeat_status;

typedef struct eegfeat_config eegfeat_config;
typedef struct eegfeat_table eegfeat_table;
typedef struct eegfeat_bench eegfeat_bench;

/* Message of the last failed call on this thread ("" when none). */
const char* eegfeat_last_error(void);
const char* eegfeat_version(void);

/* Receives diagnostics (skipped channels, missing annotations). NULL restores
   the default, which writes to stderr. */
typedef void (*eegfeat_log_fn)(const char* message, void* user);
void eegfeat_set_log(eegfeat_log_fn fn, void* user);

/* Strings returned through char** are released with eegfeat_string_free. */
void eegfeat_string_free(char* s);

/* ---- run configuration ---- */
eegfeat_status eegfeat_config_create(eegfeat_config** out);
eegfeat_status eegfeat_config_load(const char* path, eegfeat_config** out);
eegfeat_status eegfeat_config_parse(const char* json, eegfeat_config** out);
/* key is a top-level config key or "params.<name>"; value is JSON or a bare
   string. */
eegfeat_status eegfeat_config_set(eegfeat_config* cfg, const char* key, const char* value);
eegfeat_status eegfeat_config_to_json(const eegfeat_config* cfg, char** out);
void eegfeat_config_destroy(eegfeat_config* cfg);

/* ---- commands ---- */
/* Each EDF may have annotations in "<path>.ann". */
eegfeat_status eegfeat_extract(const eegfeat_config* cfg, const char* const* edf_paths,
                               size_t n_paths, const char* out_csv, size_t* rows_out);
eegfeat_status eegfeat_evaluate(const eegfeat_config* cfg, const char* table_csv,
                                const char* out_csv, double* err0_out,
                                size_t* significant_out);
/* features may be NULL to consider every table column. */
eegfeat_status eegfeat_select(const eegfeat_config* cfg, const char* table_csv,
                              const char* const* features, size_t n_features,
                              const char* out_csv, const char* out_json,
                              size_t* best_size_out, double* best_merit_out);

typedef struct eegfeat_synth_params {
  double duration_s;
  double fs;
  double background_rms;
  double amplitude_factor;
  const double* seizure_starts_s;
  const double* seizure_ends_s;
  size_t n_seizures;
  uint64_t seed;
} eegfeat_synth_params;

/* 600 s at 256 Hz, RMS 20, factor 4, seizures [120,180) and [400,460). The
   seizure pointers refer to static storage. */
void eegfeat_synth_params_default(eegfeat_synth_params* p);
/* Writes the EDF and its "<edf_path>.ann" annotation file. */
eegfeat_status eegfeat_synth(const eegfeat_synth_params* p, const char* edf_path);

/* ---- benchmark ---- */
/* features may be NULL for the default set; sizes may be NULL for
   1024, 2048, 4096. */
eegfeat_status eegfeat_bench_run(const char* const* features, size_t n_features,
                                 const size_t* sizes, size_t n_sizes, uint64_t seed,
                                 eegfeat_bench** out);
size_t eegfeat_bench_feature_count(const eegfeat_bench* b);
eegfeat_status eegfeat_bench_slope(const eegfeat_bench* b, size_t i, const char** feature,
                                   const char** complexity, double* slope);
eegfeat_status eegfeat_bench_write_csv(const eegfeat_bench* b, const char* path);
void eegfeat_bench_destroy(eegfeat_bench* b);

/* ---- feature tables ---- */
eegfeat_status eegfeat_table_load(const char* path, eegfeat_table** out);
size_t eegfeat_table_rows(const eegfeat_table* t);
size_t eegfeat_table_columns(const eegfeat_table* t);
const char* eegfeat_table_column_name(const eegfeat_table* t, size_t i);
/* Copies up to `capacity` values of column i. */
eegfeat_status eegfeat_table_column(const eegfeat_table* t, size_t i, double* values,
                                    size_t capacity);
/* 1 = seizure, 0 = normal. */
eegfeat_status eegfeat_table_label(const eegfeat_table* t, size_t row, int* label);
void eegfeat_table_destroy(eegfeat_table* t);

/* ---- array functions ---- */
/* Scalar time- or frequency-domain feature of one epoch. cfg may be NULL for
   defaults; fs is only used by frequency features. */
eegfeat_status eegfeat_feature(const eegfeat_config* cfg, const char* name, const double* x,
                               size_t n, double fs, double* out);
eegfeat_status eegfeat_bayes_error(const double* seizure, size_t n_seizure,
                                   const double* normal, size_t n_normal, double* out);
eegfeat_status eegfeat_err0(size_t n_seizure, size_t n_normal, double* out);

#ifdef __cplusplus
}
#endif

#endif
