#pragma once

#include <stdexcept>
#include <string>

namespace xxxlab {

enum class ErrorCode {
  NonzeroRemainder,
  Inconsistent,
  NotSeparating,
  NoKernelElement,
  PreconditionViolated,
  NoCompanion,
  SolverBudgetExceeded,
  OutOfDomain,
  NotCommuting,
  ClusteringAmbiguous,
  UnmatchedPair,
  UnmatchedTuple,
  EmptyImage,
  RankDeficientSampling,
  InterpolationDegeneracy,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

/// Base of every domain error raised by the library. The code identifies the
/// failure mode; the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace xxxlab
