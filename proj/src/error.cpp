#include "binid/error.hpp"

namespace binid {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroFactor: return "ZeroFactor";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NegativeNatural: return "NegativeNatural";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::MixedJets: return "MixedJets";
    case ErrorCode::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NonPositiveS: return "NonPositiveS";
    case ErrorCode::NRequired: return "NRequired";
    case ErrorCode::MRequired: return "MRequired";
    case ErrorCode::InternalRouteMismatch: return "InternalRouteMismatch";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::UnknownIdentity: return "UnknownIdentity";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
  }
  return "Unknown";
}

}  // namespace binid
