#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eegfeat/signal.hpp"

namespace eegfeat {

// Epochs x feature columns with class labels. Column names follow
// <Feature><Band><Hemisphere>, e.g. EnergyL or EnergyD1R.
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(std::vector<std::string> columns);

  void add_row(std::string record, double epoch_start_s, EpochLabel label,
               std::vector<double> values);

  std::size_t rows() const { return labels_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::string>& records() const { return records_; }
  const std::vector<double>& epoch_starts() const { return epoch_starts_; }
  const std::vector<EpochLabel>& labels() const { return labels_; }

  bool has_column(const std::string& name) const;
  std::size_t column_index(const std::string& name) const;
  std::span<const double> column(const std::string& name) const;
  std::span<const double> column(std::size_t index) const { return values_.at(index); }

  std::size_t count(EpochLabel label) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> records_;
  std::vector<double> epoch_starts_;
  std::vector<EpochLabel> labels_;
  std::vector<std::vector<double>> values_;  // [column][row]
};

// Fixed 9-significant-digit formatting used by every CSV writer.
std::string format_value(double v);

void write_feature_table(std::ostream& os, const FeatureTable& table);
FeatureTable read_feature_table(std::istream& is);
FeatureTable read_feature_table_file(const std::string& path);

}  // namespace eegfeat
