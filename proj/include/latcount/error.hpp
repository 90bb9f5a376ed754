#pragma once

#include <stdexcept>
#include <string>

namespace latcount {

enum class ErrorKind {
  InfeasibleMargins,
  NoConvergence,
  MaxEntBoundary,
  SingularCovariance,
  NotPositiveDefinite,
  BudgetExceeded,
  DimensionTooLarge,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InfeasibleMargins: return "InfeasibleMargins";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MaxEntBoundary: return "MaxEntBoundary";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace latcount
