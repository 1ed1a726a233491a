#include "dindex/error.hpp"

namespace dindex {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedExpression: return "MalformedExpression";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::DivisionInEquation: return "DivisionInEquation";
    case Errc::NegativeExponent: return "NegativeExponent";
    case Errc::ConstantSigmaImage: return "ConstantSigmaImage";
    case Errc::DependentSigmaImages: return "DependentSigmaImages";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::SystemNotDifference: return "SystemNotDifference";
    case Errc::IndexTooSmall: return "IndexTooSmall";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidSystemFile: return "InvalidSystemFile";
    case Errc::PointSearchExhausted: return "PointSearchExhausted";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::OracleUnsupported: return "OracleUnsupported";
    case Errc::NoStabilizationWithinBudget: return "NoStabilizationWithinBudget";
    case Errc::NotASolution: return "NotASolution";
    case Errc::EmbeddingMismatch: return "EmbeddingMismatch";
    case Errc::TailNotLinear: return "TailNotLinear";
    case Errc::SlopeMismatch: return "SlopeMismatch";
    case Errc::HypothesisUnmet: return "HypothesisUnmet";
    case Errc::OnsetExceedsBound: return "OnsetExceedsBound";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Error";
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NotASolution:
    case Errc::EmbeddingMismatch:
      return 2;
    case Errc::TailNotLinear:
    case Errc::SlopeMismatch:
    case Errc::HypothesisUnmet:
    case Errc::OnsetExceedsBound:
    case Errc::InvariantViolation:
      return 3;
    default:
      return 1;
  }
}

}  // namespace dindex
