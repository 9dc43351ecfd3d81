#ifndef KVAR_KCLASS_HPP
#define KVAR_KCLASS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "kvar/integer.hpp"

namespace kvar {

// A Grothendieck class that is a polynomial in the Lefschetz class L:
// c_0 + c_1*L + ... + c_d*L^d with exact integer coefficients.
class LPoly {
 public:
  LPoly() = default;
  LPoly(Int constant);  // NOLINT(google-explicit-constructor): 1 and L-1 read naturally
  LPoly(long constant) : LPoly(Int(constant)) {}
  static LPoly L();
  static LPoly monomial(int deg, Int c = 1);

  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Int coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Int(0); }

  LPoly operator+(const LPoly& o) const;
  LPoly operator-(const LPoly& o) const;
  LPoly operator*(const LPoly& o) const;
  LPoly operator-() const;
  friend bool operator==(const LPoly&, const LPoly&) = default;

  // counting specialization L -> q; a ring homomorphism
  Int eval_at(const Int& q) const;
  // the class mod L, i.e. the constant coefficient
  Int mod_L() const { return coeff(0); }

  std::string str() const;

 private:
  void trim();
  std::vector<Int> c_;
};

LPoly lpoly_parse(std::string_view text);

// [P^n] = 1 + L + ... + L^n
LPoly class_projective_space(int n);
// join of varieties with classes a and b: a*b*(L-1) + a + b
LPoly class_join(const LPoly& a, const LPoly& b);
// r-fold cone: iterate a -> L*a + 1
LPoly class_cone(const LPoly& a, int r);
// smooth quadric Q_n in P^{n+1} and affine sphere Y_n in A^{n+1}
LPoly class_smooth_quadric(int n);
LPoly class_affine_sphere(int n);
// union of the n coordinate hyperplanes in P^{n-1}: [P^{n-1}] - (L-1)^{n-1}
LPoly class_coordinate_hyperplane_union(int n);
// zero locus in A^{n+1} of the equations cutting out a projective class a
LPoly class_affine_cone(const LPoly& a);

}  // namespace kvar

#endif
