#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace addcomb {

enum class ErrorCode {
  EmptySet,
  NonUnitDilation,
  PrimeRequired,
  NotASubgroup,
  HypothesisNotMet,
  Undefined,
  NotRectifiable,
  PreconditionFailed,
  NotFullDimensional,
  NotAnF2Isomorphism,
  RangeError,
  InvalidParams,
  UnknownSuite,
  ParseError,
  // A theorem that must hold was observed to fail; always an implementation bug.
  InternalConsistency,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NonUnitDilation: return "NonUnitDilation";
    case ErrorCode::PrimeRequired: return "PrimeRequired";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::NotRectifiable: return "NotRectifiable";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotAnF2Isomorphism: return "NotAnF2Isomorphism";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace addcomb
