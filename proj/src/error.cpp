#include "sharpmax/error.hpp"

namespace sharpmax {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::BoundaryNotHolder: return "BoundaryNotHolder";
    case ErrorCode::BallIsWholeSpace: return "BallIsWholeSpace";
    case ErrorCode::NotQuasiGeodesic: return "NotQuasiGeodesic";
    case ErrorCode::PointOutsideBall: return "PointOutsideBall";
    case ErrorCode::LevelBelowThreshold: return "LevelBelowThreshold";
    case ErrorCode::ExponentOrder: return "ExponentOrder";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NotAGraphSpace: return "NotAGraphSpace";
    case ErrorCode::RestrictionMismatch: return "RestrictionMismatch";
    case ErrorCode::NotHolder: return "NotHolder";
    case ErrorCode::UnboundedEta: return "UnboundedEta";
    case ErrorCode::InfeasibleGradient: return "InfeasibleGradient";
    case ErrorCode::ExponentGap: return "ExponentGap";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sharpmax
