#pragma once

#include <stdexcept>
#include <string>

namespace eegfeat {

enum class ErrorCode {
  invalid_argument = 1,
  io = 2,
  format = 3,
  undefined_result = 4,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto eegfeat_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::invalid_argument, what);
}

}  // namespace eegfeat
