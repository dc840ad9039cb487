#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace aqcc {

enum class Errc {
  NonPrimeCharacteristic,
  ReducibleModulus,
  OrderNotDividing,
  NotCoprime,
  FieldMismatch,
  RootOfUnityUnavailable,
  InvalidDesignedDistance,
  DuplicateEvaluationPoint,
  ZeroMultiplier,
  RankConditionViolated,
  RankDeficient,
  NotBasic,
  CatastrophicEncoder,
  SymplecticViolation,
  TooFewFrames,
  ContainmentUnverified,
  ZeroLogicalDimension,
  IndependenceViolated,
  PartitionInvalid,
  ContainmentFailed,
  ParamOutOfRange,
  InvalidArgument,
  ParseError,
};

const char* errc_name(Errc code);

// All library failures are reported through this type. `index` carries the
// offending block or row where the error names one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<int> index = {});

  Errc code() const { return code_; }
  std::optional<int> index() const { return index_; }

 private:
  Errc code_;
  std::optional<int> index_;
};

}  // namespace aqcc
