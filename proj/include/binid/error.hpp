#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace binid {

enum class ErrorCode {
  // exact_arith
  ZeroFactor,
  DivisionByZero,
  NegativeNatural,
  ParseError,
  Overflow,
  // jets
  MixedJets,
  DivisionByZeroJet,
  OrderExceeded,
  // identities
  NonPositiveS,
  NRequired,
  MRequired,
  InternalRouteMismatch,
  EmptySequence,
  UnknownIdentity,
  // laplace_numeric
  ToleranceNotMet,
  InvalidTolerance,
  // montecarlo
  InvalidRate,
  InsufficientSamples,
  TooFewSamples,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace binid
