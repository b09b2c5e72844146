#pragma once

#include <stdexcept>
#include <string>

namespace seqwit {

enum class ErrorCode {
  ApexNotExcludable,
  NotInIP,
  NotStrictlyIncreasing,
  NotConvergent,
  ContinuousFunction,
  UnsupportedChannel,
  NotInSP,
  MarkerNotInChain,
  CorpusNotInIP,
  FamilyNotAD,
  UnsupportedSet,
  InvalidDescriptor,
  ParseError,
  UnknownSuite,
  UnknownQuery,
  InvalidConfig,
};

const char* error_code_name(ErrorCode code);

/// Domain error with a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace seqwit
