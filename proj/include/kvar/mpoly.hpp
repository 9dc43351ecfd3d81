#ifndef KVAR_MPOLY_HPP
#define KVAR_MPOLY_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kvar/errors.hpp"
#include "kvar/ffield.hpp"
#include "kvar/integer.hpp"

namespace kvar {

using Expvec = std::vector<uint32_t>;

struct Term {
  Expvec exps;
  Int coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

// graded-lex: higher total degree first, then lexicographic on exponents
bool glex_before(const Expvec& a, const Expvec& b);

// Sparse multivariate polynomial with exact integer coefficients over a fixed
// number of variables x0..x{n-1}. Terms are kept in canonical graded-lex
// order (leading term first) with no zero coefficients.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(int num_vars) : nvars_(num_vars) {}

  static MPoly zero(int num_vars) { return MPoly(num_vars); }
  static MPoly constant(int num_vars, Int c);
  static MPoly variable(int num_vars, int i);
  static MPoly monomial(int num_vars, Expvec e, Int c);
  static MPoly from_terms(int num_vars, std::vector<Term> terms);

  int num_vars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::vector<Term>& terms() const { return terms_; }
  const Int* coeff_of(const Expvec& e) const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Int& c) const;
  MPoly pow(unsigned e) const;
  friend bool operator==(const MPoly&, const MPoly&) = default;

  // degree of the zero polynomial is reported as the empty optional
  std::optional<int> total_degree() const;
  std::optional<int> degree_in(int var) const;
  bool is_homogeneous() const;

  FFElem eval(std::span<const FFElem> point, const FieldCtx& ctx) const;
  Int eval_int(std::span<const Int> point) const;

  MPoly homogenized(int new_var) const;
  // substitute var = 1; inverse of homogenized for its output
  MPoly dehomogenized(int var) const;
  // F = x_var * low + high with neither part involving x_var
  std::pair<MPoly, MPoly> decompose_linear(int var) const;
  MPoly partial(int var) const;
  // all j such that F and all its partials vanish at the coordinate point e_j
  std::vector<int> coordinate_singularities() const;
  MPoly permuted(const std::vector<int>& perm) const;
  // substitute x_i <- sum_j m[i][j] x_j; m must be invertible over Q
  MPoly substituted_linear(const std::vector<std::vector<Int>>& m) const;
  // remove an unused variable / insert a fresh one at `pos`
  MPoly dropped_var(int var) const;
  MPoly inserted_var(int pos) const;

  std::string str() const;
  std::string str(std::span<const std::string> names) const;

 private:
  void normalize();

  int nvars_ = 0;
  std::vector<Term> terms_;
};

// Maps an identifier to a variable index; nullopt marks an unknown name.
using VarResolver = std::function<std::optional<int>(const std::string&)>;

// Grammar: integer literals, variables, + - * ^, parentheses; ^ takes a
// nonnegative integer literal. Default resolver accepts x0..x{num_vars-1}.
MPoly poly_parse(std::string_view text, int num_vars);
MPoly poly_parse(std::string_view text, int num_vars, const VarResolver& resolver);

// determinant of a square integer matrix (exact, fraction-free elimination)
Int matrix_determinant(std::vector<std::vector<Int>> m);

}  // namespace kvar

#endif
