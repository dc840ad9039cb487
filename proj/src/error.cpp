#include "aqcc/error.hpp"

namespace aqcc {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::OrderNotDividing: return "OrderNotDividing";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::RootOfUnityUnavailable: return "RootOfUnityUnavailable";
    case Errc::InvalidDesignedDistance: return "InvalidDesignedDistance";
    case Errc::DuplicateEvaluationPoint: return "DuplicateEvaluationPoint";
    case Errc::ZeroMultiplier: return "ZeroMultiplier";
    case Errc::RankConditionViolated: return "RankConditionViolated";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotBasic: return "NotBasic";
    case Errc::CatastrophicEncoder: return "CatastrophicEncoder";
    case Errc::SymplecticViolation: return "SymplecticViolation";
    case Errc::TooFewFrames: return "TooFewFrames";
    case Errc::ContainmentUnverified: return "ContainmentUnverified";
    case Errc::ZeroLogicalDimension: return "ZeroLogicalDimension";
    case Errc::IndependenceViolated: return "IndependenceViolated";
    case Errc::PartitionInvalid: return "PartitionInvalid";
    case Errc::ContainmentFailed: return "ContainmentFailed";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message, std::optional<int> index)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace aqcc
