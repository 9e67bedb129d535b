#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpmax {

enum class ErrorCode {
  InvalidArgument,
  InvalidIndex,
  DisconnectedGraph,
  NonPositiveLength,
  NonPositiveWeight,
  InvalidMetric,
  SizeTooSmall,
  BetaOutOfRange,
  BoundaryNotHolder,
  BallIsWholeSpace,
  NotQuasiGeodesic,
  PointOutsideBall,
  LevelBelowThreshold,
  ExponentOrder,
  KindMismatch,
  NotAGraphSpace,
  RestrictionMismatch,
  NotHolder,
  UnboundedEta,
  InfeasibleGradient,
  ExponentGap,
  EpsilonOutOfRange,
  ParseError,
  ValidationError,
  UnknownCommand,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sharpmax
