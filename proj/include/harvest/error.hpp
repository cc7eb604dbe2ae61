#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace harvest {

enum class ErrorCode {
  OutsideStaticPatch,
  NonpositiveDeSitterLength,
  NegativeRadius,
  NonpositiveTemperature,
  NegativeSeparation,
  NonpositiveEntanglingDistance,
  NonpositiveEntanglingAngle,
  UnequalSuperpositionAngles,
  UnequalEntanglingAngles,
  NonpositiveWidth,
  NonpositiveCoupling,
  NonfiniteParameter,
  PhaseOutOfRange,
  BadEpsilonLadder,
  WindowTooSmall,
  BadTolerance,
  NonConverged,
  RealityViolation,
  GeometryUnavailable,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Issue {
  ErrorCode code;
  std::string message;
};

// Thrown by validate_scenario with one entry per violated invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace harvest
