#include "kvar/integer.hpp"

#include "kvar/errors.hpp"

namespace kvar {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::SizeExceedsBudget: return "SizeExceedsBudget";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MixedFields: return "MixedFields";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::ExponentNegative: return "ExponentNegative";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DegreeInVariableExceedsOne: return "DegreeInVariableExceedsOne";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InternalDisagreement: return "InternalDisagreement";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::ZeroQ: return "ZeroQ";
    case Errc::LeadingFormUnexpected: return "LeadingFormUnexpected";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::BadInput: return "BadInput";
  }
  return "UnknownError";
}

uint32_t mod_u32(const Int& v, uint32_t m) {
  if (m == 0) fail(Errc::BadInput, "modulus must be positive");
  return static_cast<uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), m));
}

int64_t to_i64(const Int& v) {
  if (!v.fits_slong_p()) fail(Errc::BadInput, "integer out of 64-bit range: " + v.get_str());
  return static_cast<int64_t>(v.get_si());
}

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

int64_t balanced_mod(const Int& c, uint32_t q) {
  int64_t r = mod_u32(c, q);
  if (2 * r > static_cast<int64_t>(q)) r -= q;
  return r;
}

int64_t balanced_mod(int64_t c, uint32_t q) { return balanced_mod(Int(static_cast<long>(c)), q); }

std::string int_to_string(const Int& v) { return v.get_str(); }

Int int_from_string(const std::string& s) {
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    fail(Errc::BadInput, "not a decimal integer: " + s);
  return v;
}

}  // namespace kvar
