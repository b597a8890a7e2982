#include "eegfeat/signal.hpp"

#include <algorithm>
#include <cmath>

#include "eegfeat/error.hpp"

namespace eegfeat {

namespace {

bool is_positive_integer(double v, std::size_t* out) {
  const double r = std::round(v);
  if (r < 1.0 || std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) {
    return false;
  }
  *out = static_cast<std::size_t>(r);
  return true;
}

}  // namespace

Epoch::Epoch(std::vector<double> samples, double fs, std::string channel_id,
             double start_time)
    : samples_(std::move(samples)),
      fs_(fs),
      channel_id_(std::move(channel_id)),
      start_time_(start_time) {
  require(samples_.size() >= 2, "epoch needs at least 2 samples");
  require(fs_ > 0.0 && std::isfinite(fs_), "epoch sampling rate must be > 0");
  for (double v : samples_) {
    require(std::isfinite(v), "epoch samples must be finite");
  }
}

Record::Record(std::vector<std::string> channels,
               std::vector<std::vector<double>> data, double fs,
               std::vector<Interval> annotations)
    : channels_(std::move(channels)), data_(std::move(data)), fs_(fs) {
  require(fs_ > 0.0 && std::isfinite(fs_), "record sampling rate must be > 0");
  require(!channels_.empty(), "record needs at least one channel");
  require(channels_.size() == data_.size(),
          "record channel labels and data rows differ in count");
  for (const auto& row : data_) {
    require(row.size() == data_.front().size(),
            "all record channels must have the same length");
  }
  annotations_ = normalize_intervals(std::move(annotations));
  const double dur = duration();
  for (const auto& a : annotations_) {
    require(a.start_s >= 0.0 && a.end_s <= dur + 1e-9,
            "annotation [" + std::to_string(a.start_s) + ", " +
                std::to_string(a.end_s) + ") lies outside the record");
  }
}

Record Record::with_annotations(std::vector<Interval> annotations) const {
  return Record(channels_, data_, fs_, std::move(annotations));
}

void Montage::validate() const {
  require(!left.empty() && !right.empty(),
          "montage needs channels on both sides");
  for (const auto& l : left) {
    require(std::find(right.begin(), right.end(), l) == right.end(),
            "channel " + l + " is on both montage sides");
  }
}

Montage default_montage() {
  return Montage{
      {"FP1-F7", "F7-T7", "T7-P7", "P7-O1", "FP1-F3", "F3-C3", "C3-P3",
       "P3-O1"},
      {"FP2-F4", "F4-C4", "C4-P4", "P4-O2", "FP2-F8", "F8-T8", "T8-P8",
       "P8-O2"}};
}

const char* to_string(EpochLabel label) {
  return label == EpochLabel::seizure ? "seizure" : "normal";
}

std::vector<Interval> normalize_intervals(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    require(std::isfinite(iv.start_s) && std::isfinite(iv.end_s),
            "interval bounds must be finite");
    require(iv.end_s > iv.start_s,
            "interval end " + std::to_string(iv.end_s) +
                " is not after start " + std::to_string(iv.start_s));
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return a.start_s < b.start_s ||
                     (a.start_s == b.start_s && a.end_s < b.end_s);
            });
  std::vector<Interval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.start_s <= merged.back().end_s) {
      merged.back().end_s = std::max(merged.back().end_s, iv.end_s);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

WindowGeometry window_geometry(double fs, double width_s, double stride_s) {
  WindowGeometry g;
  require(is_positive_integer(width_s * fs, &g.width),
          "epoch width * fs must be a positive integer");
  require(is_positive_integer(stride_s * fs, &g.stride),
          "epoch stride * fs must be a positive integer");
  return g;
}

std::size_t epoch_count(std::size_t length, WindowGeometry g) {
  if (length < g.width) return 0;
  return (length - g.width) / g.stride + 1;
}

std::vector<std::vector<Epoch>> segment(const Record& record, double width_s,
                                        double stride_s) {
  const auto g = window_geometry(record.fs(), width_s, stride_s);
  const std::size_t count = epoch_count(record.length(), g);
  if (count == 0) {
    fail(ErrorCode::invalid_argument,
         "record of " + std::to_string(record.length()) +
             " samples is shorter than one " + std::to_string(g.width) +
             "-sample window");
  }
  std::vector<std::vector<Epoch>> out(record.channels().size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto row = record.channel(c);
    out[c].reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t begin = k * g.stride;
      out[c].emplace_back(
          std::vector<double>(row.begin() + begin, row.begin() + begin + g.width),
          record.fs(), record.channels()[c],
          static_cast<double>(begin) / record.fs());
    }
  }
  return out;
}

EpochLabel label_interval(const Interval& epoch,
                          std::span<const Interval> annotations) {
  double overlap = 0.0;
  for (const auto& a : annotations) {
    const double lo = std::max(epoch.start_s, a.start_s);
    const double hi = std::min(epoch.end_s, a.end_s);
    if (hi > lo) overlap += hi - lo;
  }
  return overlap > 0.5 * epoch.duration() ? EpochLabel::seizure
                                          : EpochLabel::normal;
}

EpochLabel label_epoch(const Epoch& epoch,
                       std::span<const Interval> annotations) {
  return label_interval(epoch.interval(), annotations);
}

std::pair<double, double> hemisphere_average(
    const std::map<std::string, double>& values, const Montage& montage) {
  montage.validate();
  auto side_mean = [&](const std::vector<std::string>& side) {
    double sum = 0.0;
    for (const auto& ch : side) {
      auto it = values.find(ch);
      if (it == values.end()) {
        fail(ErrorCode::invalid_argument, "missing value for channel " + ch);
      }
      if (!std::isfinite(it->second)) {
        fail(ErrorCode::invalid_argument,
             "non-finite value for channel " + ch);
      }
      sum += it->second;
    }
    return sum / static_cast<double>(side.size());
  };
  return {side_mean(montage.left), side_mean(montage.right)};
}

}  // namespace eegfeat
