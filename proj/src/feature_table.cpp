#include "eegfeat/feature_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "eegfeat/error.hpp"

namespace eegfeat {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
  if (s == "nan" || s == "NaN") return std::nan("");
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::format, "line " + std::to_string(line_no) +
                                ": cannot parse number '" + s + "'");
  }
}

EpochLabel parse_label(const std::string& s, std::size_t line_no) {
  if (s == "seizure" || s == "1") return EpochLabel::seizure;
  if (s == "normal" || s == "0") return EpochLabel::normal;
  fail(ErrorCode::format,
       "line " + std::to_string(line_no) + ": unknown label '" + s + "'");
}

}  // namespace

FeatureTable::FeatureTable(std::vector<std::string> columns)
    : columns_(std::move(columns)), values_(columns_.size()) {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    require(!columns_[i].empty(), "feature column names must be non-empty");
    for (std::size_t j = 0; j < i; ++j) {
      require(columns_[i] != columns_[j], "duplicate feature column " + columns_[i]);
    }
  }
}

void FeatureTable::add_row(std::string record, double epoch_start_s,
                           EpochLabel label, std::vector<double> values) {
  require(values.size() == columns_.size(),
          "row has " + std::to_string(values.size()) + " values for " +
              std::to_string(columns_.size()) + " columns");
  records_.push_back(std::move(record));
  epoch_starts_.push_back(epoch_start_s);
  labels_.push_back(label);
  for (std::size_t c = 0; c < values.size(); ++c) values_[c].push_back(values[c]);
}

bool FeatureTable::has_column(const std::string& name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

std::size_t FeatureTable::column_index(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) {
    fail(ErrorCode::invalid_argument, "feature table has no column '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns_.begin());
}

std::span<const double> FeatureTable::column(const std::string& name) const {
  return values_[column_index(name)];
}

std::size_t FeatureTable::count(EpochLabel label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_feature_table(std::ostream& os, const FeatureTable& t) {
  os << "record,epoch_start_s,label";
  for (const auto& c : t.columns()) os << ',' << c;
  os << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    os << t.records()[r] << ',' << format_value(t.epoch_starts()[r]) << ','
       << to_string(t.labels()[r]);
    for (std::size_t c = 0; c < t.columns().size(); ++c) {
      os << ',' << format_value(t.column(c)[r]);
    }
    os << '\n';
  }
}

FeatureTable read_feature_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::format, "feature table is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "record" || header[1] != "epoch_start_s" ||
      header[2] != "label") {
    fail(ErrorCode::format,
         "feature table header must start with record,epoch_start_s,label");
  }
  FeatureTable t(std::vector<std::string>(header.begin() + 3, header.end()));
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::format, "line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
    }
    std::vector<double> values;
    values.reserve(cells.size() - 3);
    for (std::size_t c = 3; c < cells.size(); ++c) {
      values.push_back(parse_number(cells[c], line_no));
    }
    t.add_row(cells[0], parse_number(cells[1], line_no), parse_label(cells[2], line_no),
              std::move(values));
  }
  return t;
}

FeatureTable read_feature_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open feature table " + path);
  return read_feature_table(in);
}

}  // namespace eegfeat
