#include "kvar/ffield.hpp"

#include <algorithm>
#include <sstream>

namespace kvar {

namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// dense coefficient vectors over F_p, lowest degree first, no trailing-zero trim
using Fp = std::vector<uint32_t>;

Fp trim(Fp a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Fp poly_mul(const Fp& a, const Fp& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}

// remainder of a by monic b
Fp poly_rem(Fp a, const Fp& b, uint32_t p) {
  a = trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    uint32_t c = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      uint32_t& t = a[shift + i];
      t = (t + p * p - c * b[i] % p) % p;
    }
    a = trim(a);
  }
  return a;
}

// trial division by every monic polynomial of degree 1..deg/2
bool is_irreducible(const Fp& f, uint32_t p) {
  size_t deg = f.size() - 1;
  for (size_t d = 1; 2 * d <= deg; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      Fp g(d + 1, 0);
      uint64_t v = idx;
      for (size_t i = 0; i < d; ++i) {
        g[i] = static_cast<uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx FieldCtx::create(uint32_t p, uint32_t k, uint64_t max_q) {
  if (k < 1) fail(Errc::BadInput, "extension degree must be >= 1");
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > max_q)
      fail(Errc::SizeExceedsBudget,
           "q = " + std::to_string(p) + "^" + std::to_string(k) + " exceeds bound " +
               std::to_string(max_q));
  }
  if (q > kTableLimit)
    fail(Errc::SizeExceedsBudget, "q = " + std::to_string(q) + " exceeds table limit " +
                                      std::to_string(kTableLimit));

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.k_ = k;
  ctx.q_ = static_cast<uint32_t>(q);
  if (k > 1) {
    // first irreducible monic polynomial of degree k: candidates enumerated by
    // packed value, i.e. lexicographically on (c_{k-1}, ..., c_0)
    for (uint64_t idx = 0; idx < q; ++idx) {
      Fp f(k + 1, 0);
      uint64_t v = idx;
      for (uint32_t i = 0; i < k; ++i) {
        f[i] = static_cast<uint32_t>(v % p);
        v /= p;
      }
      f[k] = 1;
      if (is_irreducible(f, p)) {
        ctx.modulus_ = f;
        break;
      }
    }
  }
  ctx.build_tables();
  return ctx;
}

void FieldCtx::build_tables() {
  uint32_t q = q_;
  add_.assign(static_cast<size_t>(q) * q, 0);
  mul_.assign(static_cast<size_t>(q) * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);

  auto unpack = [&](uint32_t rep) {
    Fp c(k_, 0);
    for (uint32_t i = 0; i < k_; ++i) {
      c[i] = rep % p_;
      rep /= p_;
    }
    return c;
  };
  auto pack = [&](const Fp& c) {
    uint32_t rep = 0;
    for (uint32_t i = k_; i-- > 0;) rep = rep * p_ + (i < c.size() ? c[i] : 0);
    return rep;
  };

  for (uint32_t a = 0; a < q; ++a) {
    Fp ca = unpack(a);
    for (uint32_t b = 0; b < q; ++b) {
      Fp cb = unpack(b);
      Fp s(k_, 0);
      for (uint32_t i = 0; i < k_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      add_[static_cast<size_t>(a) * q + b] = static_cast<uint16_t>(pack(s));
      Fp m = poly_mul(trim(ca), trim(cb), p_);
      if (k_ > 1) m = poly_rem(m, modulus_, p_);
      mul_[static_cast<size_t>(a) * q + b] = static_cast<uint16_t>(pack(m));
    }
  }
  for (uint32_t a = 0; a < q; ++a) {
    Fp ca = unpack(a);
    Fp n(k_, 0);
    for (uint32_t i = 0; i < k_; ++i) n[i] = (p_ - ca[i]) % p_;
    neg_[a] = static_cast<uint16_t>(pack(n));
  }
  for (uint32_t a = 1; a < q; ++a) {
    for (uint32_t b = 1; b < q; ++b) {
      if (mul_[static_cast<size_t>(a) * q + b] == 1) {
        inv_[a] = static_cast<uint16_t>(b);
        break;
      }
    }
  }
}

std::string FieldCtx::modulus_string() const {
  if (k_ == 1) return "";
  std::ostringstream os;
  bool first = true;
  for (uint32_t i = k_ + 1; i-- > 0;) {
    uint32_t c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

void FieldCtx::check(FFElem a) const {
  if (a.q != q_)
    fail(Errc::MixedFields, "element of F_" + std::to_string(a.q) + " used in F_" +
                                std::to_string(q_));
  if (a.rep >= q_) fail(Errc::BadInput, "element representative out of range");
}

FFElem FieldCtx::element(uint32_t rep) const {
  if (rep >= q_) fail(Errc::BadInput, "element representative out of range");
  return {rep, q_};
}

std::vector<FFElem> FieldCtx::elements() const {
  std::vector<FFElem> v;
  v.reserve(q_);
  for (uint32_t r = 0; r < q_; ++r) v.push_back({r, q_});
  return v;
}

std::vector<uint32_t> FieldCtx::coeff_vector(FFElem a) const {
  check(a);
  std::vector<uint32_t> c(k_, 0);
  uint32_t rep = a.rep;
  for (uint32_t i = 0; i < k_; ++i) {
    c[i] = rep % p_;
    rep /= p_;
  }
  return c;
}

FFElem FieldCtx::add(FFElem a, FFElem b) const {
  check(a);
  check(b);
  return {add_rep(a.rep, b.rep), q_};
}

FFElem FieldCtx::sub(FFElem a, FFElem b) const {
  check(a);
  check(b);
  return {sub_rep(a.rep, b.rep), q_};
}

FFElem FieldCtx::mul(FFElem a, FFElem b) const {
  check(a);
  check(b);
  return {mul_rep(a.rep, b.rep), q_};
}

FFElem FieldCtx::neg(FFElem a) const {
  check(a);
  return {neg_[a.rep], q_};
}

FFElem FieldCtx::inv(FFElem a) const {
  check(a);
  if (a.rep == 0) fail(Errc::DivisionByZero, "inverse of zero");
  return {inv_[a.rep], q_};
}

FFElem FieldCtx::pow(FFElem a, uint64_t e) const {
  check(a);
  return {pow_rep(a.rep, e), q_};
}

uint32_t FieldCtx::pow_rep(uint32_t a, uint64_t e) const {
  uint32_t r = 1;
  uint32_t base = a;
  while (e > 0) {
    if (e & 1) r = mul_rep(r, base);
    base = mul_rep(base, base);
    e >>= 1;
  }
  return r;
}

uint32_t FieldCtx::reduce_int(const Int& v) const { return mod_u32(v, p_); }

FFElem FieldCtx::from_integer(const Int& v) const { return {reduce_int(v), q_}; }

}  // namespace kvar
