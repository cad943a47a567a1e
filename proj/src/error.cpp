#include "m0n/error.hpp"

namespace m0n {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::WeightSumNotTwo: return "WeightSumNotTwo";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::MixedCodimension: return "MixedCodimension";
    case ErrorCode::CodimensionOverflow: return "CodimensionOverflow";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::IndexClash: return "IndexClash";
    case ErrorCode::BadPairOrder: return "BadPairOrder";
    case ErrorCode::NonIntegralScaling: return "NonIntegralScaling";
    case ErrorCode::WrongN: return "WrongN";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::PairContainsE: return "PairContainsE";
    case ErrorCode::AdmissibilityWall: return "AdmissibilityWall";
    case ErrorCode::CacheFormat: return "CacheFormat";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

}  // namespace m0n
