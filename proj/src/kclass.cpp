#include "kvar/kclass.hpp"

#include <sstream>

#include "kvar/errors.hpp"
#include "kvar/mpoly.hpp"

namespace kvar {

void LPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

LPoly::LPoly(Int constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

LPoly LPoly::L() { return monomial(1); }

LPoly LPoly::monomial(int deg, Int c) {
  LPoly r;
  if (c != 0) {
    r.c_.assign(deg + 1, Int(0));
    r.c_[deg] = std::move(c);
  }
  return r;
}

LPoly LPoly::operator+(const LPoly& o) const {
  LPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

LPoly LPoly::operator-() const {
  LPoly r = *this;
  for (Int& c : r.c_) c = -c;
  return r;
}

LPoly LPoly::operator-(const LPoly& o) const { return *this + (-o); }

LPoly LPoly::operator*(const LPoly& o) const {
  LPoly r;
  if (c_.empty() || o.c_.empty()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

Int LPoly::eval_at(const Int& q) const {
  Int acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i];
  return acc;
}

std::string LPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    Int c = c_[i];
    if (c == 0) continue;
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
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "L";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

LPoly lpoly_parse(std::string_view text) {
  VarResolver lname = [](const std::string& name) -> std::optional<int> {
    if (name == "L") return 0;
    return std::nullopt;
  };
  MPoly f = poly_parse(text, 1, lname);
  LPoly r;
  for (const Term& t : f.terms()) r = r + LPoly::monomial(static_cast<int>(t.exps[0]), t.coeff);
  return r;
}

LPoly class_projective_space(int n) {
  if (n < 0) fail(Errc::BadInput, "projective dimension must be >= 0");
  LPoly r;
  for (int i = 0; i <= n; ++i) r = r + LPoly::monomial(i);
  return r;
}

LPoly class_join(const LPoly& a, const LPoly& b) {
  return a * b * (LPoly::L() - LPoly(1)) + a + b;
}

LPoly class_cone(const LPoly& a, int r) {
  if (r < 1) fail(Errc::BadInput, "cone iteration count must be >= 1");
  LPoly acc = a;
  for (int i = 0; i < r; ++i) acc = LPoly::L() * acc + LPoly(1);
  return acc;
}

namespace {

// [Q_n] and [Y_n] by simultaneous recursion:
//   [Y_n] = L^n - [Y_{n-1}] + 1 + (L-1)[Q_{n-2}]
//   [Q_n] = [Q_{n-1}] + [Y_n]
// bases [Q_0] = 2, [Q_1] = L+1, [Y_0] = 2, [Y_1] = L-1.
std::pair<LPoly, LPoly> quadric_pair(int n) {
  if (n < 0) fail(Errc::BadInput, "quadric index must be >= 0");
  std::vector<LPoly> Q(std::max(n + 1, 2)), Y(std::max(n + 1, 2));
  Q[0] = LPoly(2);
  Q[1] = LPoly::L() + LPoly(1);
  Y[0] = LPoly(2);
  Y[1] = LPoly::L() - LPoly(1);
  for (int i = 2; i <= n; ++i) {
    Y[i] = LPoly::monomial(i) - Y[i - 1] + LPoly(1) + (LPoly::L() - LPoly(1)) * Q[i - 2];
    Q[i] = Q[i - 1] + Y[i];
  }
  return {Q[n], Y[n]};
}

}  // namespace

LPoly class_smooth_quadric(int n) { return quadric_pair(n).first; }

LPoly class_affine_sphere(int n) { return quadric_pair(n).second; }

LPoly class_coordinate_hyperplane_union(int n) {
  if (n < 1) fail(Errc::BadInput, "need at least one hyperplane");
  LPoly lm1 = LPoly::L() - LPoly(1);
  LPoly pw(1);
  for (int i = 0; i < n - 1; ++i) pw = pw * lm1;
  return class_projective_space(n - 1) - pw;
}

LPoly class_affine_cone(const LPoly& a) { return a * (LPoly::L() - LPoly(1)) + LPoly(1); }

}  // namespace kvar
