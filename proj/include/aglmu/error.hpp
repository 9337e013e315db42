#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aglmu {

enum class ErrorKind {
  NotPrime,
  NotPrimePower,
  SizeCap,
  DivisionByZero,
  FieldMismatch,
  ZeroElement,
  NotDivisor,
  CharDividesD,
  NotContained,
  NotModule,
  NonIntegralDim,
  InvalidSubgroup,
  FullGroup,
  InvalidPoset,
  NotLattice,
  NotCrosscut,
  CrosscutTooLarge,
  KOutOfRange,
  InvalidOrder,
  ParseError,
  CacheError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotDivisor: return "NotDivisor";
    case ErrorKind::CharDividesD: return "CharDividesD";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NotModule: return "NotModule";
    case ErrorKind::NonIntegralDim: return "NonIntegralDim";
    case ErrorKind::InvalidSubgroup: return "InvalidSubgroup";
    case ErrorKind::FullGroup: return "FullGroup";
    case ErrorKind::InvalidPoset: return "InvalidPoset";
    case ErrorKind::NotLattice: return "NotLattice";
    case ErrorKind::NotCrosscut: return "NotCrosscut";
    case ErrorKind::CrosscutTooLarge: return "CrosscutTooLarge";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CacheError: return "CacheError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aglmu
