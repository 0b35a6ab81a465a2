#pragma once

#include <stdexcept>
#include <string>

namespace spanorm {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Io,
  GirthPrecondition,
  NiceRangeExceeded,
  NegativeComponent,
  Infeasible,
  Unbounded,
  SizeLimit,
  Construction,
  UnknownName,
  RejectedSpec,
};

const char* to_string(ErrorCode code);

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
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace spanorm
