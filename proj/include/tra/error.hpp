#pragma once

#include <stdexcept>
#include <string>

namespace tra {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  Accuracy,
  Degenerate,
  Supercritical,
  NotFound,
  UndefinedPhase,
  Resolution,
  NoRegularSolution,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an iterative evaluation stops short of the requested
/// tolerance. The best value reached so far is kept for callers that can
/// live with it.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double partial)
      : Error(ErrorCode::Accuracy, what), partial_(partial) {}

  double partial_value() const noexcept { return partial_; }

 private:
  double partial_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace tra
