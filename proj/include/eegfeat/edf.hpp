#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegfeat/signal.hpp"

namespace eegfeat {

struct EdfSignalHeader {
  std::string label;
  std::string transducer;
  std::string physical_dimension;
  double physical_min = 0.0;
  double physical_max = 0.0;
  int digital_min = 0;
  int digital_max = 0;
  std::string prefiltering;
  int samples_per_record = 0;

  double gain() const {
    return (physical_max - physical_min) / static_cast<double>(digital_max - digital_min);
  }
};

struct EdfHeader {
  std::string version = "0";
  std::string patient;
  std::string recording;
  std::string start_date = "01.01.00";  // dd.mm.yy
  std::string start_time = "00.00.00";  // hh.mm.ss
  std::string reserved;
  long n_records = 0;
  double record_duration_s = 1.0;
  std::vector<EdfSignalHeader> signals;

  std::size_t header_bytes() const { return 256 * (signals.size() + 1); }
  std::size_t record_bytes() const;
};

// Raw file contents: digital samples per signal, concatenated across records.
struct EdfFile {
  EdfHeader header;
  std::vector<std::vector<std::int16_t>> digital;
};

EdfFile read_edf_file(const std::string& path);
void write_edf_file(const EdfFile& file, const std::string& path);

// Digital -> physical: (d - dmin) * (pmax - pmin) / (dmax - dmin) + pmin.
std::vector<double> to_physical(const EdfSignalHeader& s,
                                const std::vector<std::int16_t>& digital);
// Inverse mapping, rounded and clamped to the digital range.
std::vector<std::int16_t> to_digital(const EdfSignalHeader& s,
                                     const std::vector<double>& physical);

// All signals must share one sampling rate.
Record to_record(const EdfFile& file, std::vector<Interval> annotations = {});
Record read_edf(const std::string& path, std::vector<Interval> annotations = {});

// Encodes a record as 16-bit EDF with 1-second data records; each channel's
// physical range is its sample range (padded when constant).
EdfFile encode_edf(const Record& record);
void write_edf(const Record& record, const std::string& path);

// "start end" pairs in seconds, one per line; '#' starts a comment.
std::vector<Interval> parse_annotations(const std::string& text);
std::vector<Interval> read_annotations(const std::string& path);
void write_annotations(const std::vector<Interval>& intervals, const std::string& path);

}  // namespace eegfeat
