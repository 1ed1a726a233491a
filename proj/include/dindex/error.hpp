#ifndef DINDEX_ERROR_HPP
#define DINDEX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dindex {

/// Failure codes raised by the library. Each code belongs to one of three
/// families that the CLI maps onto process exit codes.
enum class Errc {
  // input / validation (exit 1)
  MalformedExpression,
  SyntaxError,
  UnknownIdentifier,
  DivisionInEquation,
  NegativeExponent,
  ConstantSigmaImage,
  DependentSigmaImages,
  DivisionByZero,
  SystemNotDifference,
  IndexTooSmall,
  InvalidArgument,
  InvalidSystemFile,
  PointSearchExhausted,
  OracleTooLarge,
  OracleUnsupported,
  NoStabilizationWithinBudget,
  // the supplied point is not usable (exit 2)
  NotASolution,
  EmbeddingMismatch,
  // standing hypotheses of the theory are violated (exit 3)
  TailNotLinear,
  SlopeMismatch,
  HypothesisUnmet,
  OnsetExceedsBound,
  InvariantViolation,
};

const char* errc_name(Errc code);

/// 1 = validation error, 2 = unusable solution point, 3 = hypothesis violation.
int exit_code_for(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dindex

#endif  // DINDEX_ERROR_HPP
