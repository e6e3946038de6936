#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semilab {

/// Every rejection the library can produce. Each code maps to a named
/// failure of a constructor or operation; witnesses (element indices) are
/// attached to the exception when one exists.
enum class ErrorCode {
  IndexOutOfRange,
  NonAssociative,
  BadIdentity,
  NotPermutation,
  NotAntiHomomorphism,
  NotInvolutive,
  TooLarge,
  InvalidArgument,
  BadPrime,
  CharacteristicTwo,
  MixedFields,
  ShapeMismatch,
  DivisionByZero,
  DependentBasis,
  EquationFails,
  DependentFG,
  DependentH,
  BetaZero,
  ZeroVector,
  BadIndex,
  BudgetExceeded,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::BadIdentity: return "BadIdentity";
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::NotAntiHomomorphism: return "NotAntiHomomorphism";
    case ErrorCode::NotInvolutive: return "NotInvolutive";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::EquationFails: return "EquationFails";
    case ErrorCode::DependentFG: return "DependentFG";
    case ErrorCode::DependentH: return "DependentH";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string const& detail,
        std::vector<std::size_t> witness = {})
      : std::runtime_error(format(code, detail, witness)),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }

  /// Element indices that exhibit the failure, e.g. (a, b, c) for a
  /// non-associative triple. Empty when the failure has no witness.
  std::vector<std::size_t> const& witness() const noexcept { return witness_; }

 private:
  static std::string format(ErrorCode code, std::string const& detail,
                            std::vector<std::size_t> const& witness) {
    std::ostringstream out;
    out << to_string(code);
    if (!detail.empty()) {
      out << ": " << detail;
    }
    if (!witness.empty()) {
      out << " [witness";
      for (auto w : witness) {
        out << ' ' << w;
      }
      out << ']';
    }
    return out.str();
  }

  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace semilab
