#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invchar {

enum class ErrorKind {
  DivisionByZero,
  NotDivisible,
  PoleAtZero,
  Parse,
  InvalidInput,
  Unbounded,
  Degenerate,
  RedundantFacet,
  NotSimple,
  NotCentrallySymmetric,
  IncompatibleInvolution,
  RegularValueViolation,
  SliceNotSimple,
  IncompleteFan,
  InvalidAutomorphism,
  NonIntegralSplit,
  UnpairedComponent,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::RedundantFacet: return "RedundantFacet";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotCentrallySymmetric: return "NotCentrallySymmetric";
    case ErrorKind::IncompatibleInvolution: return "IncompatibleInvolution";
    case ErrorKind::RegularValueViolation: return "RegularValueViolation";
    case ErrorKind::SliceNotSimple: return "SliceNotSimple";
    case ErrorKind::IncompleteFan: return "IncompleteFan";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::NonIntegralSplit: return "NonIntegralSplit";
    case ErrorKind::UnpairedComponent: return "UnpairedComponent";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace invchar
