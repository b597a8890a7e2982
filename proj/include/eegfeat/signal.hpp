#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eegfeat {

// Half-open interval [start_s, end_s) in seconds from record start.
struct Interval {
  double start_s = 0.0;
  double end_s = 0.0;

  double duration() const { return end_s - start_s; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// One fixed-length window of one channel.
class Epoch {
 public:
  Epoch(std::vector<double> samples, double fs, std::string channel_id,
        double start_time);

  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double fs() const { return fs_; }
  const std::string& channel_id() const { return channel_id_; }
  double start_time() const { return start_time_; }
  double duration() const { return static_cast<double>(samples_.size()) / fs_; }
  Interval interval() const { return {start_time_, start_time_ + duration()}; }

 private:
  std::vector<double> samples_;
  double fs_;
  std::string channel_id_;
  double start_time_;
};

// Multi-channel labeled recording. Annotations are stored normalized (sorted,
// merged) and must lie within the record duration.
class Record {
 public:
  Record(std::vector<std::string> channels,
         std::vector<std::vector<double>> data, double fs,
         std::vector<Interval> annotations = {});

  const std::vector<std::string>& channels() const { return channels_; }
  const std::vector<std::vector<double>>& data() const { return data_; }
  std::span<const double> channel(std::size_t i) const { return data_.at(i); }
  double fs() const { return fs_; }
  std::size_t length() const { return data_.empty() ? 0 : data_.front().size(); }
  double duration() const { return static_cast<double>(length()) / fs_; }
  const std::vector<Interval>& annotations() const { return annotations_; }

  // Same samples, different annotation set.
  Record with_annotations(std::vector<Interval> annotations) const;

 private:
  std::vector<std::string> channels_;
  std::vector<std::vector<double>> data_;
  double fs_;
  std::vector<Interval> annotations_;
};

struct Montage {
  std::vector<std::string> left;
  std::vector<std::string> right;

  void validate() const;
};

// Bipolar 16-channel 10-20 montage; odd electrodes (first eight) are left.
Montage default_montage();

enum class EpochLabel { normal = 0, seizure = 1 };

const char* to_string(EpochLabel label);

// Sorts, validates (end > start) and merges overlapping or touching intervals.
std::vector<Interval> normalize_intervals(std::vector<Interval> intervals);

// Epoch geometry in samples. Throws unless width_s*fs and stride_s*fs are
// positive integers.
struct WindowGeometry {
  std::size_t width = 0;
  std::size_t stride = 0;
};
WindowGeometry window_geometry(double fs, double width_s, double stride_s);

// Number of full windows that fit in `length` samples (0 when none fit).
std::size_t epoch_count(std::size_t length, WindowGeometry geometry);

// Result is indexed [channel][epoch]. Trailing partial windows are dropped.
std::vector<std::vector<Epoch>> segment(const Record& record, double width_s,
                                        double stride_s);

// Seizure iff more than half of the epoch overlaps the (normalized)
// annotations.
EpochLabel label_interval(const Interval& epoch,
                          std::span<const Interval> annotations);
EpochLabel label_epoch(const Epoch& epoch,
                       std::span<const Interval> annotations);

// Arithmetic means over the left and right channel sets.
std::pair<double, double> hemisphere_average(
    const std::map<std::string, double>& values, const Montage& montage);

}  // namespace eegfeat
