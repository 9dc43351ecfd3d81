#ifndef KVAR_INTEGER_HPP
#define KVAR_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kvar {

// Exact integer type used for all symbolic coefficients.
using Int = mpz_class;

// Residue of v in [0, m). m > 0.
uint32_t mod_u32(const Int& v, uint32_t m);

// Checked narrowing; throws Errc::BadInput when v does not fit.
int64_t to_i64(const Int& v);

Int int_pow(const Int& base, unsigned long e);

// Representative of c mod q in the balanced range (-q/2, q/2].
int64_t balanced_mod(const Int& c, uint32_t q);
int64_t balanced_mod(int64_t c, uint32_t q);

std::string int_to_string(const Int& v);
Int int_from_string(const std::string& s);

}  // namespace kvar

#endif
