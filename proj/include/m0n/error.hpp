#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace m0n {

enum class ErrorCode {
  WeightOutOfRange,
  WeightSumNotTwo,
  TooFewPoints,
  UnsupportedN,
  InvalidPartition,
  ParseError,
  InvalidTree,
  MixedCodimension,
  CodimensionOverflow,
  WrongArity,
  IndexClash,
  BadPairOrder,
  NonIntegralScaling,
  WrongN,
  BetaOutOfRange,
  PairContainsE,
  AdmissibilityWall,
  CacheFormat,
  InternalInvariant,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; code() tells callers
// which precondition was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace m0n
