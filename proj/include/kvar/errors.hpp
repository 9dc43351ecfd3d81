#ifndef KVAR_ERRORS_HPP
#define KVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kvar {

enum class Errc {
  NotPrime,
  SizeExceedsBudget,
  DivisionByZero,
  MixedFields,
  SyntaxError,
  UnknownVariable,
  ExponentNegative,
  DimensionMismatch,
  DegreeInVariableExceedsOne,
  NotHomogeneous,
  SingularMatrix,
  BudgetExceeded,
  InternalDisagreement,
  VertexOutOfRange,
  ZeroQ,
  LeadingFormUnexpected,
  HypothesisViolated,
  BadInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg, long position = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code),
        position_(position) {}

  Errc code() const { return code_; }
  // byte offset into the offending input for parse errors, -1 otherwise
  long position() const { return position_; }

 private:
  Errc code_;
  long position_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg, long position = -1) {
  throw Error(code, msg, position);
}

}  // namespace kvar

#endif
