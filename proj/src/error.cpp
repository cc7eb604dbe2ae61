#include "harvest/error.hpp"

namespace harvest {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutsideStaticPatch: return "OUTSIDE_STATIC_PATCH";
    case ErrorCode::NonpositiveDeSitterLength: return "NONPOSITIVE_DE_SITTER_LENGTH";
    case ErrorCode::NegativeRadius: return "NEGATIVE_RADIUS";
    case ErrorCode::NonpositiveTemperature: return "NONPOSITIVE_TEMPERATURE";
    case ErrorCode::NegativeSeparation: return "NEGATIVE_SEPARATION";
    case ErrorCode::NonpositiveEntanglingDistance: return "NONPOSITIVE_ENTANGLING_DISTANCE";
    case ErrorCode::NonpositiveEntanglingAngle: return "NONPOSITIVE_ENTANGLING_ANGLE";
    case ErrorCode::UnequalSuperpositionAngles: return "UNEQUAL_SUPERPOSITION_ANGLES";
    case ErrorCode::UnequalEntanglingAngles: return "UNEQUAL_ENTANGLING_ANGLES";
    case ErrorCode::NonpositiveWidth: return "NONPOSITIVE_WIDTH";
    case ErrorCode::NonpositiveCoupling: return "NONPOSITIVE_COUPLING";
    case ErrorCode::NonfiniteParameter: return "NONFINITE_PARAMETER";
    case ErrorCode::PhaseOutOfRange: return "PHASE_OUT_OF_RANGE";
    case ErrorCode::BadEpsilonLadder: return "BAD_EPSILON_LADDER";
    case ErrorCode::WindowTooSmall: return "WINDOW_TOO_SMALL";
    case ErrorCode::BadTolerance: return "BAD_TOLERANCE";
    case ErrorCode::NonConverged: return "NON_CONVERGED";
    case ErrorCode::RealityViolation: return "REALITY_VIOLATION";
    case ErrorCode::GeometryUnavailable: return "GEOMETRY_UNAVAILABLE";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

namespace {

std::string join(const std::vector<Issue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(issue.code)) + " (" + issue.message + ")";
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(issues.empty() ? ErrorCode::Schema : issues.front().code, join(issues)),
      issues_(std::move(issues)) {}

}  // namespace harvest
