#ifndef KVAR_FFIELD_HPP
#define KVAR_FFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kvar/errors.hpp"
#include "kvar/integer.hpp"

namespace kvar {

// Element of a finite field F_q. `rep` packs the coefficient vector
// (c_0, ..., c_{k-1}) over F_p as sum c_i * p^i; for prime fields it is the
// residue itself. `q` tags the owning field so cross-field arithmetic is
// rejected rather than silently wrong.
struct FFElem {
  uint32_t rep = 0;
  uint32_t q = 0;

  friend bool operator==(const FFElem&, const FFElem&) = default;
};

// A concrete finite field F_q, q = p^k, with full arithmetic tables.
// Extension fields (k > 1) reduce modulo the first irreducible monic
// polynomial of degree k in the ordering that enumerates coefficient
// vectors (c_{k-1}, ..., c_0) lexicographically.
class FieldCtx {
 public:
  static constexpr uint64_t kDefaultMaxQ = 64;
  // hard ceiling: arithmetic tables are q*q entries
  static constexpr uint64_t kTableLimit = 1024;

  static FieldCtx create(uint32_t p, uint32_t k, uint64_t max_q = kDefaultMaxQ);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }

  // Modulus coefficients c_0..c_k (monic, c_k = 1); empty for k == 1.
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  std::string modulus_string() const;

  FFElem zero() const { return {0, q_}; }
  FFElem one() const { return {1, q_}; }
  FFElem element(uint32_t rep) const;
  // All q elements, zero first, ordered by packed value.
  std::vector<FFElem> elements() const;
  std::vector<uint32_t> coeff_vector(FFElem a) const;

  FFElem add(FFElem a, FFElem b) const;
  FFElem sub(FFElem a, FFElem b) const;
  FFElem mul(FFElem a, FFElem b) const;
  FFElem neg(FFElem a) const;
  FFElem inv(FFElem a) const;
  FFElem pow(FFElem a, uint64_t e) const;
  FFElem from_integer(const Int& v) const;

  // Unchecked fast paths on packed representatives for enumeration loops.
  uint32_t add_rep(uint32_t a, uint32_t b) const { return add_[a * q_ + b]; }
  uint32_t sub_rep(uint32_t a, uint32_t b) const { return add_[a * q_ + neg_[b]]; }
  uint32_t mul_rep(uint32_t a, uint32_t b) const { return mul_[a * q_ + b]; }
  uint32_t neg_rep(uint32_t a) const { return neg_[a]; }
  uint32_t pow_rep(uint32_t a, uint64_t e) const;
  uint32_t reduce_int(const Int& v) const;

 private:
  FieldCtx() = default;
  void check(FFElem a) const;
  void build_tables();

  uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<uint32_t> modulus_;
  std::vector<uint16_t> add_, mul_;
  std::vector<uint16_t> neg_, inv_;
};

}  // namespace kvar

#endif
