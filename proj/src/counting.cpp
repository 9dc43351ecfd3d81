#include "kvar/counting.hpp"

#include <algorithm>
#include <chrono>

namespace kvar {

namespace {

// coefficients reduced into F_q once, exponents flattened for the inner loop
struct ReducedPoly {
  struct RTerm {
    uint32_t coeff;
    std::vector<std::pair<uint16_t, uint16_t>> vars;  // (index, exponent)
  };
  std::vector<RTerm> terms;

  ReducedPoly(const MPoly& f, const FieldCtx& ctx) {
    for (const Term& t : f.terms()) {
      uint32_t c = ctx.reduce_int(t.coeff);
      if (c == 0) continue;
      RTerm rt;
      rt.coeff = c;
      for (size_t i = 0; i < t.exps.size(); ++i)
        if (t.exps[i] > 0)
          rt.vars.push_back({static_cast<uint16_t>(i), static_cast<uint16_t>(t.exps[i])});
      terms.push_back(std::move(rt));
    }
  }

  uint32_t eval(const std::vector<uint32_t>& point, const FieldCtx& ctx) const {
    uint32_t acc = 0;
    for (const RTerm& t : terms) {
      uint32_t v = t.coeff;
      for (auto [i, e] : t.vars) {
        uint32_t x = point[i];
        if (x == 0) {
          v = 0;
          break;
        }
        v = ctx.mul_rep(v, e == 1 ? x : ctx.pow_rep(x, e));
      }
      acc = ctx.add_rep(acc, v);
    }
    return acc;
  }
};

bool all_vanish(const std::vector<ReducedPoly>& sys, const std::vector<uint32_t>& point,
                const FieldCtx& ctx) {
  for (const ReducedPoly& f : sys)
    if (f.eval(point, ctx) != 0) return false;
  return true;
}

std::vector<ReducedPoly> reduce_system(std::span<const MPoly> system, int nvars,
                                       const FieldCtx& ctx) {
  std::vector<ReducedPoly> sys;
  for (const MPoly& f : system) {
    if (f.num_vars() != nvars)
      fail(Errc::DimensionMismatch, "system polynomial has wrong number of variables");
    sys.emplace_back(f, ctx);
  }
  return sys;
}

// Counts zeros over all points with coordinates free[0..m) ranging over F_q,
// where `point` already holds fixed values beyond the free prefix.
uint64_t fold_count(const std::vector<ReducedPoly>& sys, std::vector<uint32_t>& point,
                    size_t free_vars, const FieldCtx& ctx) {
  uint64_t count = 0;
  const uint32_t q = ctx.q();
  for (size_t i = 0; i < free_vars; ++i) point[i] = 0;
  while (true) {
    if (all_vanish(sys, point, ctx)) ++count;
    size_t i = free_vars;
    while (i > 0) {
      --i;
      if (++point[i] < q) break;
      point[i] = 0;
      if (i == 0) return count;
    }
    if (free_vars == 0) return count;
  }
}

int degree_sum(std::span<const MPoly> system) {
  int s = 0;
  for (const MPoly& f : system) s += f.total_degree().value_or(0);
  return s;
}

}  // namespace

uint64_t checked_power(uint32_t q, int n, uint64_t budget) {
  uint64_t points = 1;
  for (int i = 0; i < n; ++i) {
    if (points > budget / q)
      fail(Errc::BudgetExceeded, "q^n exceeds evaluation budget " + std::to_string(budget));
    points *= q;
  }
  if (points > budget)
    fail(Errc::BudgetExceeded, "q^n exceeds evaluation budget " + std::to_string(budget));
  return points;
}

uint64_t projective_space_size(int n, uint32_t q) {
  uint64_t acc = 0, pw = 1;
  for (int i = 0; i <= n; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

uint64_t count_affine(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                      uint64_t budget) {
  if (n < 0) fail(Errc::BadInput, "affine dimension must be >= 0");
  checked_power(ctx.q(), n, budget);
  std::vector<ReducedPoly> sys = reduce_system(system, n, ctx);
  std::vector<uint32_t> point(n, 0);
  return fold_count(sys, point, n, ctx);
}

uint64_t count_projective(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                          uint64_t budget) {
  if (n < 0) fail(Errc::BadInput, "projective dimension must be >= 0");
  std::vector<MPoly> polys;
  for (const MPoly& f : system) {
    if (f.num_vars() != n + 1)
      fail(Errc::DimensionMismatch, "projective system needs n+1 variables");
    if (!f.is_homogeneous())
      fail(Errc::NotHomogeneous, "projective counting requires homogeneous polynomials");
    if (f.is_zero()) continue;  // imposes nothing
    if (f.is_constant()) return 0;
    polys.push_back(f);
  }
  const uint32_t q = ctx.q();
  checked_power(q, n + 1, budget);
  std::vector<ReducedPoly> sys = reduce_system(polys, n + 1, ctx);

  // (a) affine cone: subtract the origin, divide by the q-1 scalings
  std::vector<uint32_t> point(n + 1, 0);
  uint64_t cone = fold_count(sys, point, n + 1, ctx);
  if (cone == 0 || (cone - 1) % (q - 1) != 0)
    fail(Errc::InternalDisagreement, "cone count " + std::to_string(cone) +
                                         " is not 1 mod (q-1); counting bug");
  uint64_t via_cone = (cone - 1) / (q - 1);

  // (b) representatives with leftmost nonzero coordinate normalized to 1
  uint64_t via_reps = 0;
  for (int lead = 0; lead <= n; ++lead) {
    std::fill(point.begin(), point.end(), 0);
    point[lead] = 1;
    // free coordinates are lead+1..n; rotate them into a prefix-style fold
    std::vector<uint32_t> tail(n - lead, 0);
    uint64_t sub = 0;
    while (true) {
      for (int i = lead + 1; i <= n; ++i) point[i] = tail[i - lead - 1];
      if (all_vanish(sys, point, ctx)) ++sub;
      size_t i = tail.size();
      bool done = tail.empty();
      while (i > 0) {
        --i;
        if (++tail[i] < q) break;
        tail[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
    via_reps += sub;
  }

  if (via_cone != via_reps)
    fail(Errc::InternalDisagreement,
         "projective counts disagree: cone " + std::to_string(via_cone) + " vs representatives " +
             std::to_string(via_reps));
  return via_reps;
}

namespace {

CountReport make_report(std::span<const MPoly> system, SpaceRef space, const FieldCtx& ctx,
                        uint64_t budget, bool projective) {
  auto t0 = std::chrono::steady_clock::now();
  CountReport r;
  r.system.assign(system.begin(), system.end());
  r.space = space;
  r.q = ctx.q();
  r.count = projective ? count_projective(system, space.n, ctx, budget)
                       : count_affine(system, space.n, ctx, budget);
  int degsum = degree_sum(system);
  if (projective) {
    r.applicable = degsum < space.n + 1;
    r.violation = r.applicable && (r.count % ctx.q()) != 1 % ctx.q();
  } else {
    r.applicable = degsum < space.n;
    r.violation = r.applicable && (r.count % ctx.q()) != 0;
  }
  r.residue = balanced_mod(Int(static_cast<unsigned long>(r.count)), ctx.q());
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

CountReport cw_check_affine(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                            uint64_t budget) {
  return make_report(system, {SpaceRef::Affine, n}, ctx, budget, false);
}

CountReport cw_check_projective(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                                uint64_t budget) {
  return make_report(system, {SpaceRef::Projective, n}, ctx, budget, true);
}

}  // namespace kvar
