#pragma once
// Failure taxonomy for the whole library.  Every throw site picks the
// narrowest kind that applies; the CLI maps kinds onto process exit codes,
// so the enum is part of the observable contract.

#include <stdexcept>
#include <string>

namespace pzeta {

enum class Err {
  InvalidArgument,
  NotPrime,
  BudgetExceeded,
  DegreeMismatch,
  Parse,
  UnknownVariable,
  InsufficientTerms,
  ConvergenceFailure,
  IllConditioned,
  ResidualTooLarge,
  NonUnitConstantTerm,
  NonIntegerPrediction,
  InjectivityViolated,
  ZeroDegree,
  Io,
};

inline const char* err_name(Err k) {
  switch (k) {
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::NotPrime: return "NotPrime";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::DegreeMismatch: return "DegreeMismatch";
    case Err::Parse: return "Parse";
    case Err::UnknownVariable: return "UnknownVariable";
    case Err::InsufficientTerms: return "InsufficientTerms";
    case Err::ConvergenceFailure: return "ConvergenceFailure";
    case Err::IllConditioned: return "IllConditioned";
    case Err::ResidualTooLarge: return "ResidualTooLarge";
    case Err::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case Err::NonIntegerPrediction: return "NonIntegerPrediction";
    case Err::InjectivityViolated: return "InjectivityViolated";
    case Err::ZeroDegree: return "ZeroDegree";
    case Err::Io: return "Io";
  }
  return "Unknown";
}

class PzetaError : public std::runtime_error {
 public:
  PzetaError(Err kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  PzetaError(Err kind, const std::string& msg, long line, long col)
      : std::runtime_error(msg), kind_(kind), line_(line), col_(col) {}

  Err kind() const { return kind_; }
  long line() const { return line_; }  // 1-based, -1 when not positional
  long col() const { return col_; }

 private:
  Err kind_;
  long line_ = -1;
  long col_ = -1;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) {
  throw PzetaError(kind, msg);
}

[[noreturn]] inline void fail_at(Err kind, const std::string& msg, long line,
                                 long col) {
  throw PzetaError(kind, msg, line, col);
}

}  // namespace pzeta
