#include "kvar/mpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace kvar {

namespace {

int degree_of(const Expvec& e) {
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
}

struct GlexGreater {
  bool operator()(const Expvec& a, const Expvec& b) const { return glex_before(a, b); }
};

}  // namespace

bool glex_before(const Expvec& a, const Expvec& b) {
  int da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void MPoly::normalize() {
  for (const Term& t : terms_)
    if (t.exps.size() != static_cast<size_t>(nvars_))
      fail(Errc::DimensionMismatch, "exponent vector length != num_vars");
  std::map<Expvec, Int, GlexGreater> acc;
  for (Term& t : terms_) acc[std::move(t.exps)] += t.coeff;
  terms_.clear();
  for (auto& [e, c] : acc)
    if (c != 0) terms_.push_back({e, c});
}

MPoly MPoly::constant(int num_vars, Int c) {
  MPoly f(num_vars);
  if (c != 0) f.terms_.push_back({Expvec(num_vars, 0), std::move(c)});
  return f;
}

MPoly MPoly::variable(int num_vars, int i) {
  if (i < 0 || i >= num_vars) fail(Errc::BadInput, "variable index out of range");
  Expvec e(num_vars, 0);
  e[i] = 1;
  MPoly f(num_vars);
  f.terms_.push_back({std::move(e), Int(1)});
  return f;
}

MPoly MPoly::monomial(int num_vars, Expvec e, Int c) {
  MPoly f(num_vars);
  f.terms_.push_back({std::move(e), std::move(c)});
  f.normalize();
  return f;
}

MPoly MPoly::from_terms(int num_vars, std::vector<Term> terms) {
  MPoly f(num_vars);
  f.terms_ = std::move(terms);
  f.normalize();
  return f;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_[0].exps) == 0);
}

const Int* MPoly::coeff_of(const Expvec& e) const {
  for (const Term& t : terms_)
    if (t.exps == e) return &t.coeff;
  return nullptr;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  if (nvars_ != o.nvars_) fail(Errc::DimensionMismatch, "operands have different num_vars");
  MPoly r(nvars_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  if (nvars_ != o.nvars_) fail(Errc::DimensionMismatch, "operands have different num_vars");
  MPoly r(nvars_);
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      Expvec e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = a.exps[i] + b.exps[i];
      r.terms_.push_back({std::move(e), a.coeff * b.coeff});
    }
  }
  r.normalize();
  return r;
}

MPoly MPoly::operator*(const Int& c) const {
  MPoly r = *this;
  for (Term& t : r.terms_) t.coeff *= c;
  r.normalize();
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(nvars_, 1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

std::optional<int> MPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return degree_of(terms_.front().exps);
}

std::optional<int> MPoly::degree_in(int var) const {
  if (var < 0 || var >= nvars_) fail(Errc::BadInput, "variable index out of range");
  if (terms_.empty()) return std::nullopt;
  uint32_t d = 0;
  for (const Term& t : terms_) d = std::max(d, t.exps[var]);
  return static_cast<int>(d);
}

bool MPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = degree_of(terms_.front().exps);
  for (const Term& t : terms_)
    if (degree_of(t.exps) != d) return false;
  return true;
}

FFElem MPoly::eval(std::span<const FFElem> point, const FieldCtx& ctx) const {
  if (point.size() != static_cast<size_t>(nvars_))
    fail(Errc::DimensionMismatch, "point length != num_vars");
  FFElem acc = ctx.zero();
  for (const Term& t : terms_) {
    FFElem v = ctx.from_integer(t.coeff);
    for (int i = 0; i < nvars_; ++i)
      if (t.exps[i] > 0) v = ctx.mul(v, ctx.pow(point[i], t.exps[i]));
    acc = ctx.add(acc, v);
  }
  return acc;
}

Int MPoly::eval_int(std::span<const Int> point) const {
  if (point.size() != static_cast<size_t>(nvars_))
    fail(Errc::DimensionMismatch, "point length != num_vars");
  Int acc = 0;
  for (const Term& t : terms_) {
    Int v = t.coeff;
    for (int i = 0; i < nvars_; ++i)
      for (uint32_t e = 0; e < t.exps[i]; ++e) v *= point[i];
    acc += v;
  }
  return acc;
}

MPoly MPoly::homogenized(int new_var) const {
  if (is_zero()) fail(Errc::BadInput, "cannot homogenize the zero polynomial");
  if (degree_in(new_var) != 0) fail(Errc::BadInput, "homogenization variable already occurs");
  int d = *total_degree();
  MPoly r(nvars_);
  r.terms_ = terms_;
  for (Term& t : r.terms_) t.exps[new_var] = static_cast<uint32_t>(d - degree_of(t.exps));
  r.normalize();
  return r;
}

MPoly MPoly::dehomogenized(int var) const {
  if (var < 0 || var >= nvars_) fail(Errc::BadInput, "variable index out of range");
  MPoly r(nvars_);
  r.terms_ = terms_;
  for (Term& t : r.terms_) t.exps[var] = 0;
  r.normalize();
  return r;
}

std::pair<MPoly, MPoly> MPoly::decompose_linear(int var) const {
  if (!is_homogeneous()) fail(Errc::NotHomogeneous, "decompose_linear requires homogeneous input");
  auto d = degree_in(var);
  if (d.value_or(0) > 1)
    fail(Errc::DegreeInVariableExceedsOne,
         "degree in x" + std::to_string(var) + " is " + std::to_string(*d));
  MPoly low(nvars_), high(nvars_);
  for (const Term& t : terms_) {
    if (t.exps[var] == 1) {
      Term u = t;
      u.exps[var] = 0;
      low.terms_.push_back(std::move(u));
    } else {
      high.terms_.push_back(t);
    }
  }
  low.normalize();
  high.normalize();
  return {std::move(low), std::move(high)};
}

MPoly MPoly::partial(int var) const {
  if (var < 0 || var >= nvars_) fail(Errc::BadInput, "variable index out of range");
  MPoly r(nvars_);
  for (const Term& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term u = t;
    u.coeff *= static_cast<long>(u.exps[var]);
    u.exps[var] -= 1;
    r.terms_.push_back(std::move(u));
  }
  r.normalize();
  return r;
}

std::vector<int> MPoly::coordinate_singularities() const {
  if (!is_homogeneous()) fail(Errc::NotHomogeneous, "singularity scan requires homogeneous input");
  auto d = total_degree();
  if (!d || *d < 2) fail(Errc::BadInput, "singularity scan requires degree >= 2");
  // e_j is singular iff every monomial has degree <= d-2 in x_j
  std::vector<int> out;
  for (int j = 0; j < nvars_; ++j) {
    if (*degree_in(j) <= *d - 2) out.push_back(j);
  }
  return out;
}

MPoly MPoly::permuted(const std::vector<int>& perm) const {
  if (perm.size() != static_cast<size_t>(nvars_))
    fail(Errc::BadInput, "permutation length != num_vars");
  std::vector<bool> seen(nvars_, false);
  for (int v : perm) {
    if (v < 0 || v >= nvars_ || seen[v]) fail(Errc::BadInput, "not a permutation");
    seen[v] = true;
  }
  MPoly r(nvars_);
  for (const Term& t : terms_) {
    Expvec e(nvars_);
    for (int i = 0; i < nvars_; ++i) e[perm[i]] = t.exps[i];
    r.terms_.push_back({std::move(e), t.coeff});
  }
  r.normalize();
  return r;
}

MPoly MPoly::substituted_linear(const std::vector<std::vector<Int>>& m) const {
  if (m.size() != static_cast<size_t>(nvars_))
    fail(Errc::BadInput, "matrix size != num_vars");
  for (const auto& row : m)
    if (row.size() != static_cast<size_t>(nvars_)) fail(Errc::BadInput, "matrix is not square");
  if (matrix_determinant(m) == 0) fail(Errc::SingularMatrix, "substitution matrix has det 0");

  std::vector<MPoly> forms;
  forms.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    MPoly f(nvars_);
    std::vector<Term> ts;
    for (int j = 0; j < nvars_; ++j) {
      if (m[i][j] == 0) continue;
      Expvec e(nvars_, 0);
      e[j] = 1;
      ts.push_back({std::move(e), m[i][j]});
    }
    forms.push_back(MPoly::from_terms(nvars_, std::move(ts)));
  }
  MPoly acc(nvars_);
  for (const Term& t : terms_) {
    MPoly prod = MPoly::constant(nvars_, t.coeff);
    for (int i = 0; i < nvars_; ++i)
      if (t.exps[i] > 0) prod = prod * forms[i].pow(t.exps[i]);
    acc = acc + prod;
  }
  return acc;
}

MPoly MPoly::dropped_var(int var) const {
  if (degree_in(var).value_or(0) != 0)
    fail(Errc::BadInput, "cannot drop a variable that occurs in the polynomial");
  MPoly r(nvars_ - 1);
  for (const Term& t : terms_) {
    Expvec e;
    e.reserve(nvars_ - 1);
    for (int i = 0; i < nvars_; ++i)
      if (i != var) e.push_back(t.exps[i]);
    r.terms_.push_back({std::move(e), t.coeff});
  }
  r.normalize();
  return r;
}

MPoly MPoly::inserted_var(int pos) const {
  if (pos < 0 || pos > nvars_) fail(Errc::BadInput, "insert position out of range");
  MPoly r(nvars_ + 1);
  for (const Term& t : terms_) {
    Expvec e;
    e.reserve(nvars_ + 1);
    for (int i = 0; i < pos; ++i) e.push_back(t.exps[i]);
    e.push_back(0);
    for (int i = pos; i < nvars_; ++i) e.push_back(t.exps[i]);
    r.terms_.push_back({std::move(e), t.coeff});
  }
  r.normalize();
  return r;
}

std::string MPoly::str() const {
  std::vector<std::string> names;
  names.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i));
  return str(names);
}

std::string MPoly::str(std::span<const std::string> names) const {
  if (names.size() != static_cast<size_t>(nvars_))
    fail(Errc::DimensionMismatch, "name list length != num_vars");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Int c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = degree_of(t.exps) > 0;
    bool wrote = false;
    if (c != 1 || !has_vars) {
      os << c.get_str();
      wrote = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (t.exps[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (t.exps[i] > 1) os << "^" << t.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

Int matrix_determinant(std::vector<std::vector<Int>> m) {
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(Errc::BadInput, "matrix is not square");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace kvar
