#include "chbmit_summary.hpp"

#include <sstream>

#include "eegfeat/error.hpp"

namespace chbmit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<eegfeat::Interval> parse_summary(const std::string& summary_text,
                                             const std::string& edf_name) {
  std::istringstream in(summary_text);
  std::string line;
  bool in_block = false;
  std::vector<double> starts, ends;
  auto seconds_after_colon = [](const std::string& l) {
    const auto colon = l.find(':');
    return std::stod(l.substr(colon + 1));
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("File Name:", 0) == 0) {
      in_block = trim(line.substr(10)) == edf_name;
      continue;
    }
    if (!in_block || line.find("Seizure") != 0) continue;
    if (line.find("Start Time") != std::string::npos) {
      starts.push_back(seconds_after_colon(line));
    } else if (line.find("End Time") != std::string::npos) {
      ends.push_back(seconds_after_colon(line));
    }
  }
  if (starts.size() != ends.size()) {
    eegfeat::fail(eegfeat::ErrorCode::format,
                  "summary lists unmatched seizure start/end times for " + edf_name);
  }
  std::vector<eegfeat::Interval> out;
  for (std::size_t i = 0; i < starts.size(); ++i) out.push_back({starts[i], ends[i]});
  return eegfeat::normalize_intervals(std::move(out));
}

}  // namespace chbmit
