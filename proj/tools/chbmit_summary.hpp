#pragma once

#include <string>
#include <vector>

#include "eegfeat/signal.hpp"

namespace chbmit {

// Seizure intervals listed for `edf_name` in a CHB-MIT summary text, e.g.
//   File Name: chb01_03.edf
//   Seizure Start Time: 2996 seconds
//   Seizure End Time: 3036 seconds
// Numbered forms ("Seizure 1 Start Time") are accepted too.
std::vector<eegfeat::Interval> parse_summary(const std::string& summary_text,
                                             const std::string& edf_name);

}  // namespace chbmit
