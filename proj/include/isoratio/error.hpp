#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoratio {

enum class ErrorKind {
  Domain,            // nonpositive or otherwise invalid argument
  NonIntegrable,     // infinite domain without a decay certificate
  ToleranceNotMet,   // adaptive refinement stalled
  TargetOutOfRange,  // inverse requested outside the range of a map
  NotBracketed,      // root bracket could not be established
  PoleSingularity,   // evaluation too close to the pole
  InvalidSurface,    // warping function violates a structural invariant
  Unstable,          // sequence extrapolation did not settle
  BoundaryMinimum,   // minimizer drifts to the end of the search interval
  OrderingViolated,  // an ordering that must hold was observed to fail
  Config,            // malformed configuration
  Io,                // file could not be read or written
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorKind::NotBracketed: return "NotBracketed";
    case ErrorKind::PoleSingularity: return "PoleSingularity";
    case ErrorKind::InvalidSurface: return "InvalidSurface";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::BoundaryMinimum: return "BoundaryMinimum";
    case ErrorKind::OrderingViolated: return "OrderingViolated";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isoratio
