#include "eegfeat/edf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "eegfeat/error.hpp"
#include "eegfeat/feature_table.hpp"

namespace eegfeat {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(' ');
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(' ');
  return s.substr(b, e - b + 1);
}

class FieldReader {
 public:
  explicit FieldReader(const std::vector<char>& bytes) : bytes_(bytes) {}

  std::string text(std::size_t width, const char* field) {
    if (pos_ + width > bytes_.size()) {
      fail(ErrorCode::format,
           std::string("EDF header is truncated at field '") + field + "'");
    }
    std::string s(bytes_.data() + pos_, width);
    pos_ += width;
    return trim(s);
  }

  double number(std::size_t width, const char* field) {
    const std::string s = text(width, field);
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::format,
           std::string("EDF header field '") + field + "' is not a number: '" + s + "'");
    }
  }

  long integer(std::size_t width, const char* field) {
    const double v = number(width, field);
    if (v != std::floor(v)) {
      fail(ErrorCode::format,
           std::string("EDF header field '") + field + "' is not an integer");
    }
    return static_cast<long>(v);
  }

 private:
  const std::vector<char>& bytes_;
  std::size_t pos_ = 0;
};

void put_field(std::string& out, const std::string& value, std::size_t width,
               const char* field) {
  if (value.size() > width) {
    fail(ErrorCode::format, std::string("EDF field '") + field + "' value '" +
                                value + "' exceeds " + std::to_string(width) +
                                " characters");
  }
  out += value;
  out.append(width - value.size(), ' ');
}

// Shortest decimal rendering that fits the 8-character numeric fields.
std::string edf_number(double v) {
  for (int prec = 8; prec >= 1; --prec) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    std::string s(buf);
    if (s.size() <= 8 && s.find('e') == std::string::npos) return s;
  }
  fail(ErrorCode::format, "number " + std::to_string(v) + " does not fit an EDF field");
}

std::vector<char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

std::size_t EdfHeader::record_bytes() const {
  std::size_t n = 0;
  for (const auto& s : signals) n += 2 * static_cast<std::size_t>(s.samples_per_record);
  return n;
}

EdfFile read_edf_file(const std::string& path) {
  const auto bytes = slurp(path);
  if (bytes.size() < 256) {
    fail(ErrorCode::format, path + ": truncated EDF header (" +
                                std::to_string(bytes.size()) + " bytes)");
  }
  FieldReader f(bytes);
  EdfFile file;
  auto& h = file.header;
  h.version = f.text(8, "version");
  h.patient = f.text(80, "patient");
  h.recording = f.text(80, "recording");
  h.start_date = f.text(8, "startdate");
  h.start_time = f.text(8, "starttime");
  const long header_bytes = f.integer(8, "header bytes");
  h.reserved = f.text(44, "reserved");
  h.n_records = f.integer(8, "number of data records");
  h.record_duration_s = f.number(8, "data record duration");
  const long ns = f.integer(4, "number of signals");
  if (ns < 1) {
    fail(ErrorCode::format, path + ": EDF header declares " + std::to_string(ns) +
                                " signals");
  }
  const auto n = static_cast<std::size_t>(ns);
  if (bytes.size() < 256 * (n + 1)) {
    fail(ErrorCode::format, path + ": truncated EDF signal headers");
  }
  if (header_bytes != static_cast<long>(256 * (n + 1))) {
    fail(ErrorCode::format, path + ": header byte count " +
                                std::to_string(header_bytes) +
                                " does not match " + std::to_string(n) + " signals");
  }
  h.signals.resize(n);
  for (auto& s : h.signals) s.label = f.text(16, "label");
  for (auto& s : h.signals) s.transducer = f.text(80, "transducer");
  for (auto& s : h.signals) s.physical_dimension = f.text(8, "physical dimension");
  for (auto& s : h.signals) s.physical_min = f.number(8, "physical minimum");
  for (auto& s : h.signals) s.physical_max = f.number(8, "physical maximum");
  for (auto& s : h.signals) s.digital_min = static_cast<int>(f.integer(8, "digital minimum"));
  for (auto& s : h.signals) s.digital_max = static_cast<int>(f.integer(8, "digital maximum"));
  for (auto& s : h.signals) s.prefiltering = f.text(80, "prefiltering");
  for (auto& s : h.signals) {
    s.samples_per_record = static_cast<int>(f.integer(8, "samples per record"));
  }
  for (std::size_t i = 0; i < n; ++i) f.text(32, "signal reserved");

  for (const auto& s : h.signals) {
    if (s.digital_max == s.digital_min) {
      fail(ErrorCode::format, path + ": signal '" + s.label + "' has zero digital range");
    }
    if (s.samples_per_record <= 0) {
      fail(ErrorCode::format,
           path + ": signal '" + s.label + "' has no samples per record");
    }
  }
  if (!(h.record_duration_s > 0.0)) {
    fail(ErrorCode::format, path + ": data record duration must be > 0");
  }

  const std::size_t rec_bytes = h.record_bytes();
  const std::size_t data_bytes = bytes.size() - h.header_bytes();
  if (h.n_records < 0) {
    h.n_records = static_cast<long>(data_bytes / rec_bytes);
  }
  const std::size_t expected = static_cast<std::size_t>(h.n_records) * rec_bytes;
  if (data_bytes < expected) {
    fail(ErrorCode::format, path + ": truncated data section (" +
                                std::to_string(data_bytes) + " of " +
                                std::to_string(expected) + " bytes)");
  }
  if (data_bytes != expected) {
    fail(ErrorCode::format, path + ": data section size " + std::to_string(data_bytes) +
                                " is inconsistent with " + std::to_string(h.n_records) +
                                " records of " + std::to_string(rec_bytes) + " bytes");
  }

  file.digital.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    file.digital[s].reserve(static_cast<std::size_t>(h.n_records) *
                            static_cast<std::size_t>(h.signals[s].samples_per_record));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + h.header_bytes());
  for (long r = 0; r < h.n_records; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      for (int k = 0; k < h.signals[s].samples_per_record; ++k) {
        const auto v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
        file.digital[s].push_back(static_cast<std::int16_t>(v));
        p += 2;
      }
    }
  }
  return file;
}

void write_edf_file(const EdfFile& file, const std::string& path) {
  const auto& h = file.header;
  require(!h.signals.empty(), "EDF needs at least one signal");
  require(file.digital.size() == h.signals.size(), "EDF sample rows do not match signals");
  for (std::size_t s = 0; s < h.signals.size(); ++s) {
    require(file.digital[s].size() ==
                static_cast<std::size_t>(h.n_records) *
                    static_cast<std::size_t>(h.signals[s].samples_per_record),
            "EDF signal '" + h.signals[s].label + "' sample count does not fill " +
                std::to_string(h.n_records) + " records");
  }
  std::string out;
  out.reserve(h.header_bytes());
  put_field(out, h.version, 8, "version");
  put_field(out, h.patient, 80, "patient");
  put_field(out, h.recording, 80, "recording");
  put_field(out, h.start_date, 8, "startdate");
  put_field(out, h.start_time, 8, "starttime");
  put_field(out, std::to_string(h.header_bytes()), 8, "header bytes");
  put_field(out, h.reserved, 44, "reserved");
  put_field(out, std::to_string(h.n_records), 8, "number of data records");
  put_field(out, edf_number(h.record_duration_s), 8, "data record duration");
  put_field(out, std::to_string(h.signals.size()), 4, "number of signals");
  for (const auto& s : h.signals) put_field(out, s.label, 16, "label");
  for (const auto& s : h.signals) put_field(out, s.transducer, 80, "transducer");
  for (const auto& s : h.signals) put_field(out, s.physical_dimension, 8, "physical dimension");
  for (const auto& s : h.signals) put_field(out, edf_number(s.physical_min), 8, "physical minimum");
  for (const auto& s : h.signals) put_field(out, edf_number(s.physical_max), 8, "physical maximum");
  for (const auto& s : h.signals) put_field(out, std::to_string(s.digital_min), 8, "digital minimum");
  for (const auto& s : h.signals) put_field(out, std::to_string(s.digital_max), 8, "digital maximum");
  for (const auto& s : h.signals) put_field(out, s.prefiltering, 80, "prefiltering");
  for (const auto& s : h.signals) {
    put_field(out, std::to_string(s.samples_per_record), 8, "samples per record");
  }
  for (std::size_t i = 0; i < h.signals.size(); ++i) put_field(out, "", 32, "signal reserved");

  out.reserve(out.size() + static_cast<std::size_t>(h.n_records) * h.record_bytes());
  for (long r = 0; r < h.n_records; ++r) {
    for (std::size_t s = 0; s < h.signals.size(); ++s) {
      const auto spr = static_cast<std::size_t>(h.signals[s].samples_per_record);
      for (std::size_t k = 0; k < spr; ++k) {
        const auto v = static_cast<std::uint16_t>(
            file.digital[s][static_cast<std::size_t>(r) * spr + k]);
        out.push_back(static_cast<char>(v & 0xff));
        out.push_back(static_cast<char>(v >> 8));
      }
    }
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::io, "cannot write " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) fail(ErrorCode::io, "failed writing " + path);
}

std::vector<double> to_physical(const EdfSignalHeader& s,
                                const std::vector<std::int16_t>& digital) {
  std::vector<double> out(digital.size());
  const double g = s.gain();
  for (std::size_t i = 0; i < digital.size(); ++i) {
    out[i] = (static_cast<double>(digital[i]) - s.digital_min) * g + s.physical_min;
  }
  return out;
}

std::vector<std::int16_t> to_digital(const EdfSignalHeader& s,
                                     const std::vector<double>& physical) {
  std::vector<std::int16_t> out(physical.size());
  const double g = s.gain();
  for (std::size_t i = 0; i < physical.size(); ++i) {
    const double d = std::round((physical[i] - s.physical_min) / g + s.digital_min);
    out[i] = static_cast<std::int16_t>(
        std::clamp(d, static_cast<double>(s.digital_min), static_cast<double>(s.digital_max)));
  }
  return out;
}

Record to_record(const EdfFile& file, std::vector<Interval> annotations) {
  const auto& h = file.header;
  const int spr = h.signals.front().samples_per_record;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> data;
  for (std::size_t s = 0; s < h.signals.size(); ++s) {
    if (h.signals[s].samples_per_record != spr) {
      fail(ErrorCode::format, "EDF signal '" + h.signals[s].label +
                                  "' has a different sampling rate from '" +
                                  h.signals.front().label + "'");
    }
    labels.push_back(h.signals[s].label);
    data.push_back(to_physical(h.signals[s], file.digital[s]));
  }
  const double fs = static_cast<double>(spr) / h.record_duration_s;
  return Record(std::move(labels), std::move(data), fs, std::move(annotations));
}

Record read_edf(const std::string& path, std::vector<Interval> annotations) {
  return to_record(read_edf_file(path), std::move(annotations));
}

EdfFile encode_edf(const Record& record) {
  const double spr_d = record.fs();
  require(spr_d == std::floor(spr_d), "EDF export needs an integer sampling rate");
  const auto spr = static_cast<std::size_t>(spr_d);
  require(record.length() % spr == 0,
          "EDF export needs a whole number of seconds of samples");
  EdfFile file;
  auto& h = file.header;
  h.patient = "X X X X";
  h.recording = "Startdate X X X X";
  h.n_records = static_cast<long>(record.length() / spr);
  h.record_duration_s = 1.0;
  for (std::size_t c = 0; c < record.channels().size(); ++c) {
    const auto row = record.channel(c);
    const auto [lo_it, hi_it] = std::minmax_element(row.begin(), row.end());
    double lo = std::floor(*lo_it), hi = std::ceil(*hi_it);
    if (hi <= lo) {
      lo -= 1.0;
      hi += 1.0;
    }
    EdfSignalHeader s;
    s.label = record.channels()[c];
    s.physical_dimension = "uV";
    s.physical_min = std::stod(edf_number(lo));
    s.physical_max = std::stod(edf_number(hi));
    s.digital_min = -32768;
    s.digital_max = 32767;
    s.samples_per_record = static_cast<int>(spr);
    file.digital.push_back(to_digital(s, {row.begin(), row.end()}));
    h.signals.push_back(std::move(s));
  }
  return file;
}

void write_edf(const Record& record, const std::string& path) {
  write_edf_file(encode_edf(record), path);
}

std::vector<Interval> parse_annotations(const std::string& text) {
  std::vector<Interval> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    if (!(ls >> a)) {
      std::string rest;
      ls.clear();
      if (ls >> rest) {
        fail(ErrorCode::format, "annotation line " + std::to_string(line_no) +
                                    " is not a 'start end' pair");
      }
      continue;
    }
    std::string extra;
    if (!(ls >> b) || (ls >> extra)) {
      fail(ErrorCode::format, "annotation line " + std::to_string(line_no) +
                                  " is not a 'start end' pair");
    }
    if (!(b > a)) {
      fail(ErrorCode::format, "annotation line " + std::to_string(line_no) +
                                  ": end " + format_value(b) + " is not after start " +
                                  format_value(a));
    }
    out.push_back({a, b});
  }
  return normalize_intervals(std::move(out));
}

std::vector<Interval> read_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open annotation file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_annotations(ss.str());
}

void write_annotations(const std::vector<Interval>& intervals, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot write " + path);
  os << "# seizure intervals: start_s end_s\n";
  for (const auto& iv : intervals) {
    os << format_value(iv.start_s) << ' ' << format_value(iv.end_s) << '\n';
  }
  if (!os) fail(ErrorCode::io, "failed writing " + path);
}

}  // namespace eegfeat
