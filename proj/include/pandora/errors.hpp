#pragma once

#include <stdexcept>
#include <string>

namespace pandora {

// Every failure the library can signal. Usage-class kinds map to CLI exit
// code 2, resource/computation limits to exit code 1.
enum class ErrorKind {
  NegativeProbability,
  ProbabilitySumMismatch,
  NegativeValue,
  NotPerfectSquare,
  VariantMismatch,
  LengthMismatch,
  NotDecreasing,
  IllegalAction,
  StateSpaceTooLarge,
  RandomizedPolicyUnsupported,
  UnsupportedInstance,
  BadInstanceFile,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::NegativeProbability: return "NegativeProbability";
      case ErrorKind::ProbabilitySumMismatch: return "ProbabilitySumMismatch";
      case ErrorKind::NegativeValue: return "NegativeValue";
      case ErrorKind::NotPerfectSquare: return "NotPerfectSquare";
      case ErrorKind::VariantMismatch: return "VariantMismatch";
      case ErrorKind::LengthMismatch: return "LengthMismatch";
      case ErrorKind::NotDecreasing: return "NotDecreasing";
      case ErrorKind::IllegalAction: return "IllegalAction";
      case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
      case ErrorKind::RandomizedPolicyUnsupported: return "RandomizedPolicyUnsupported";
      case ErrorKind::UnsupportedInstance: return "UnsupportedInstance";
      case ErrorKind::BadInstanceFile: return "BadInstanceFile";
      case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
  }

  // 2 = caller handed us something invalid, 1 = request was valid but cannot
  // be computed within limits.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::StateSpaceTooLarge:
      case ErrorKind::RandomizedPolicyUnsupported:
        return 1;
      default:
        return 2;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace pandora
