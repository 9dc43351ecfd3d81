#include "kvar/certify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kvar {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::EmptyOrFull: return "EmptyOrFull";
    case Rule::ConeReduction: return "ConeReduction";
    case Rule::LinearBase: return "LinearBase";
    case Rule::QuadricBase: return "QuadricBase";
    case Rule::CubicSurfaceBase: return "CubicSurfaceBase";
    case Rule::SpecialForm: return "SpecialForm";
    case Rule::UnionSplit: return "UnionSplit";
    case Rule::SystemSplit: return "SystemSplit";
    case Rule::PermuteVars: return "PermuteVars";
  }
  return "?";
}

Rule rule_from_name(std::string_view name) {
  for (Rule r : {Rule::EmptyOrFull, Rule::ConeReduction, Rule::LinearBase, Rule::QuadricBase,
                 Rule::CubicSurfaceBase, Rule::SpecialForm, Rule::UnionSplit, Rule::SystemSplit,
                 Rule::PermuteVars})
    if (name == rule_name(r)) return r;
  fail(Errc::BadInput, "unknown rule name: " + std::string(name));
}

std::string Goal::str() const {
  std::ostringstream os;
  switch (kind) {
    case GoalKind::Hypersurface: os << "Z(" << polys[0].str() << ")"; break;
    case GoalKind::System: {
      os << "Z(";
      for (size_t i = 0; i < polys.size(); ++i) os << (i ? ", " : "") << polys[i].str();
      os << ")";
      break;
    }
    case GoalKind::Union: {
      os << "Z(";
      for (size_t i = 0; i < polys.size(); ++i)
        os << (i ? " * " : "") << "(" << polys[i].str() << ")";
      os << ")";
      break;
    }
  }
  os << " in P^" << n;
  return os.str();
}

std::vector<MPoly> Goal::counting_system() const {
  if (kind != GoalKind::Union) return polys;
  MPoly prod = MPoly::constant(n + 1, 1);
  for (const MPoly& f : polys) prod = prod * f;
  return {prod};
}

size_t Certificate::node_count() const {
  size_t count = 0;
  std::vector<const CertNode*> stack{root.get()};
  while (!stack.empty()) {
    const CertNode* node = stack.back();
    stack.pop_back();
    ++count;
    for (const auto& c : node->children) stack.push_back(c.get());
  }
  return count;
}

namespace {

using NodePtr = std::unique_ptr<CertNode>;

// internal signal for "no reduction rule applies"; surfaces as CertifyOutcome
struct ReductionFailure {
  std::string reason;
};

std::optional<LPoly> exact_or_nothing(const CertifyOptions& opt, std::optional<LPoly> v) {
  if (!opt.exact_classes) return std::nullopt;
  return v;
}

bool is_sum_of_all_squares(const MPoly& f) {
  int nv = f.num_vars();
  if (f.terms().size() != static_cast<size_t>(nv)) return false;
  std::vector<bool> seen(nv, false);
  for (const Term& t : f.terms()) {
    if (t.coeff != 1) return false;
    int idx = -1;
    for (int i = 0; i < nv; ++i) {
      if (t.exps[i] == 2 && idx < 0)
        idx = i;
      else if (t.exps[i] != 0)
        return false;
    }
    if (idx < 0 || seen[idx]) return false;
    seen[idx] = true;
  }
  return true;
}

class Builder {
 public:
  explicit Builder(const CertifyOptions& opt) : opt_(opt) {}

  NodePtr hypersurface(MPoly f, int n) {
    Goal goal{{f}, n, GoalKind::Hypersurface};

    // ambient P^0: the unique point has x0 = 1, so Z(f) is empty unless f = 0
    if (n == 0) {
      auto node = base(std::move(goal), Rule::EmptyOrFull, f.is_zero() ? 1 : 0);
      node->exact_class = exact_or_nothing(opt_, f.is_zero() ? LPoly(1) : LPoly());
      return node;
    }
    if (f.is_zero()) {
      auto node = base(std::move(goal), Rule::EmptyOrFull, 1);
      node->exact_class = exact_or_nothing(opt_, class_projective_space(n));
      return node;
    }
    int deg = *f.total_degree();
    if (deg == 0) {
      auto node = base(std::move(goal), Rule::EmptyOrFull, 0);
      node->exact_class = exact_or_nothing(opt_, LPoly());
      return node;
    }

    // a missing variable makes Z(f) a cone: residue 1 regardless of the base
    for (int i = 0; i <= n; ++i) {
      if (*f.degree_in(i) == 0) {
        auto node = base(std::move(goal), Rule::ConeReduction, 1);
        node->var = i;
        try {
          node->children.push_back(hypersurface(f.dropped_var(i), n - 1));
          if (node->children[0]->exact_class)
            node->exact_class =
                exact_or_nothing(opt_, class_cone(*node->children[0]->exact_class, 1));
        } catch (const ReductionFailure&) {
          // base not reducible; the cone residue stands on its own
        }
        return node;
      }
    }

    if (deg == 1) {
      auto node = base(std::move(goal), Rule::LinearBase, 1);
      node->exact_class = exact_or_nothing(opt_, class_projective_space(n - 1));
      return node;
    }

    if (deg == 2 && n >= 2) {
      auto node = base(std::move(goal), Rule::QuadricBase, 1);
      if (is_sum_of_all_squares(f))
        node->exact_class = exact_or_nothing(opt_, class_smooth_quadric(n - 1));
      return node;
    }

    // F = x_i * low + high with x_i of degree exactly 1: the residue of Z(F)
    // is 2 - residue(Z(low)) in P^{n-1}
    for (int i = 0; i <= n; ++i) {
      if (*f.degree_in(i) == 1) {
        auto [low, high] = f.decompose_linear(i);
        MPoly low_c = low.dropped_var(i);
        MPoly high_c = high.dropped_var(i);
        auto node = base(std::move(goal), Rule::SpecialForm, 0);
        node->var = i;
        node->f_low = low_c;
        node->f_high = high_c;
        node->children.push_back(hypersurface(low_c, n - 1));
        node->residue = 2 - node->children[0]->residue;
        if (high_c.is_zero() && node->children[0]->exact_class)
          node->exact_class = exact_or_nothing(
              opt_, (LPoly::L() - LPoly(1)) * *node->children[0]->exact_class +
                        class_projective_space(n - 1) + LPoly(1));
        return node;
      }
    }

    if (deg == 3 && n == 3) {
      auto node = base(std::move(goal), Rule::CubicSurfaceBase, 1);
      node->trusted = true;
      return node;
    }

    if (deg == 3 && n > 3) {
      std::vector<int> sing = f.coordinate_singularities();
      if (!sing.empty() && sing[0] != n) {
        std::vector<int> perm(n + 1);
        for (int i = 0; i <= n; ++i) perm[i] = i;
        std::swap(perm[sing[0]], perm[n]);
        MPoly g = f.permuted(perm);
        auto node = base(std::move(goal), Rule::PermuteVars, 0);
        node->permutation = perm;
        node->children.push_back(hypersurface(g, n));
        node->residue = node->children[0]->residue;
        node->exact_class = exact_or_nothing(opt_, node->children[0]->exact_class);
        return node;
      }
    }

    throw ReductionFailure{"no reduction rule applies to " + goal.str()};
  }

  NodePtr system(std::vector<MPoly> polys, int n, GoalKind kind = GoalKind::System) {
    Goal goal{polys, n, kind};

    // zero polynomials impose nothing
    std::vector<MPoly> live;
    for (MPoly& f : polys)
      if (!f.is_zero()) live.push_back(std::move(f));
    if (live.empty()) {
      auto node = base(std::move(goal), Rule::EmptyOrFull, 1);
      node->exact_class = exact_or_nothing(opt_, class_projective_space(n));
      return node;
    }
    for (const MPoly& f : live) {
      if (f.is_constant()) {
        auto node = base(std::move(goal), Rule::EmptyOrFull, 0);
        node->exact_class = exact_or_nothing(opt_, LPoly());
        return node;
      }
    }
    if (live.size() == 1) return hypersurface(std::move(live[0]), n);

    // [Z(f1, f2, R)] = [Z(f1, R)] + [Z(f2, R)] - [Z(f1*f2, R)]
    std::vector<MPoly> rest(live.begin() + 2, live.end());
    auto with_rest = [&rest](MPoly head) {
      std::vector<MPoly> v{std::move(head)};
      v.insert(v.end(), rest.begin(), rest.end());
      return v;
    };
    auto node = base(std::move(goal), Rule::SystemSplit, 0);
    MPoly prod = live[0] * live[1];
    node->children.push_back(system(with_rest(live[0]), n));
    node->children.push_back(system(with_rest(live[1]), n));
    node->children.push_back(system(with_rest(std::move(prod)), n));
    finish_split(*node);
    return node;
  }

  NodePtr union_of(std::vector<MPoly> factors, int n) {
    Goal goal{factors, n, GoalKind::Union};

    for (const MPoly& f : factors)
      if (f.is_zero()) {
        auto node = base(std::move(goal), Rule::EmptyOrFull, 1);
        node->exact_class = exact_or_nothing(opt_, class_projective_space(n));
        return node;
      }
    // nonzero constant factors scale the product without changing its zeros
    std::vector<MPoly> live;
    for (MPoly& f : factors)
      if (!f.is_constant()) live.push_back(std::move(f));
    if (live.empty()) {
      auto node = base(std::move(goal), Rule::EmptyOrFull, 0);
      node->exact_class = exact_or_nothing(opt_, LPoly());
      return node;
    }
    if (live.size() == 1) return hypersurface(std::move(live[0]), n);

    // [Z(A * g)] = [Z(A)] + [Z(g)] - [Z(A, g)] with A the leading factors
    MPoly g = live.back();
    live.pop_back();
    MPoly prod = MPoly::constant(n + 1, 1);
    for (const MPoly& f : live) prod = prod * f;

    auto node = base(std::move(goal), Rule::UnionSplit, 0);
    node->children.push_back(live.size() == 1 ? hypersurface(std::move(live[0]), n)
                                              : union_of(std::move(live), n));
    node->children.push_back(hypersurface(g, n));
    node->children.push_back(system({std::move(prod), std::move(g)}, n));
    finish_split(*node);
    return node;
  }

 private:
  NodePtr base(Goal goal, Rule rule, int64_t residue) {
    auto node = std::make_unique<CertNode>();
    node->goal = std::move(goal);
    node->rule = rule;
    node->residue = residue;
    return node;
  }

  void finish_split(CertNode& node) {
    node.residue =
        node.children[0]->residue + node.children[1]->residue - node.children[2]->residue;
    if (opt_.exact_classes && node.children[0]->exact_class && node.children[1]->exact_class &&
        node.children[2]->exact_class)
      node.exact_class = *node.children[0]->exact_class + *node.children[1]->exact_class -
                         *node.children[2]->exact_class;
  }

  const CertifyOptions& opt_;
};

void validate_input(const std::vector<MPoly>& polys, int n) {
  if (n < 1) fail(Errc::BadInput, "ambient projective dimension must be >= 1");
  if (polys.empty()) fail(Errc::BadInput, "empty input system");
  for (const MPoly& f : polys) {
    if (f.num_vars() != n + 1)
      fail(Errc::DimensionMismatch, "polynomials must have n+1 variables");
    if (!f.is_homogeneous()) fail(Errc::NotHomogeneous, "input must be homogeneous: " + f.str());
  }
}

}  // namespace

CertifyOutcome certify(const std::vector<MPoly>& system, int n, const CertifyOptions& opt) {
  validate_input(system, n);
  Builder b(opt);
  try {
    Certificate cert;
    cert.root =
        system.size() == 1 ? b.hypersurface(system[0], n) : b.system(system, n);
    return {std::move(cert), ""};
  } catch (const ReductionFailure& f) {
    return {std::nullopt, f.reason};
  }
}

CertifyOutcome certify_union(const std::vector<MPoly>& factors, int n,
                             const CertifyOptions& opt) {
  validate_input(factors, n);
  Builder b(opt);
  try {
    Certificate cert;
    cert.root =
        factors.size() == 1 ? b.hypersurface(factors[0], n) : b.union_of(factors, n);
    return {std::move(cert), ""};
  } catch (const ReductionFailure& f) {
    return {std::nullopt, f.reason};
  }
}

Certificate certify_multidegree(const MPoly& f, int n, const CertifyOptions& opt) {
  validate_input({f}, n);
  if (f.is_zero() || *f.total_degree() < 1 || *f.total_degree() > n)
    fail(Errc::HypothesisViolated, "degree must be between 1 and n");
  int nonlinear = 0;
  for (int i = 0; i <= n; ++i)
    if (*f.degree_in(i) > 1) ++nonlinear;
  if (nonlinear > 4)
    fail(Errc::HypothesisViolated,
         std::to_string(nonlinear) + " variables of degree > 1; at most 4 allowed");
  CertifyOutcome out = certify({f}, n, opt);
  if (!out.ok() || out.certificate->residue() != 1)
    fail(Errc::InternalDisagreement,
         "reduction must succeed with residue 1 under the multidegree hypothesis");
  return std::move(*out.certificate);
}

namespace {

int64_t rule_equation(const CertNode& node) {
  switch (node.rule) {
    case Rule::SpecialForm:
      return 2 - node.children.at(0)->residue;
    case Rule::PermuteVars:
      return node.children.at(0)->residue;
    case Rule::UnionSplit:
    case Rule::SystemSplit:
      return node.children.at(0)->residue + node.children.at(1)->residue -
             node.children.at(2)->residue;
    default:
      return node.residue;
  }
}

struct FlatNode {
  const CertNode* node;
  int id;
  std::vector<int> child_ids;
};

std::vector<FlatNode> flatten(const Certificate& cert) {
  std::vector<FlatNode> flat;
  std::function<int(const CertNode&)> rec = [&](const CertNode& node) -> int {
    int id = static_cast<int>(flat.size());
    flat.push_back({&node, id, {}});
    for (const auto& c : node.children) {
      int cid = rec(*c);
      flat[id].child_ids.push_back(cid);
    }
    return id;
  };
  rec(*cert.root);
  return flat;
}

}  // namespace

std::vector<int> residue_algebra_violations(const Certificate& cert) {
  std::vector<int> bad;
  for (const FlatNode& fn : flatten(cert)) {
    const CertNode& node = *fn.node;
    bool good = true;
    switch (node.rule) {
      case Rule::ConeReduction:
      case Rule::LinearBase:
      case Rule::QuadricBase:
      case Rule::CubicSurfaceBase:
        good = node.residue == 1;
        break;
      case Rule::EmptyOrFull:
        good = node.residue == 0 || node.residue == 1;
        break;
      case Rule::SpecialForm:
      case Rule::PermuteVars:
        good = node.children.size() == 1 && node.residue == rule_equation(node);
        break;
      case Rule::UnionSplit:
      case Rule::SystemSplit:
        good = node.children.size() == 3 && node.residue == rule_equation(node);
        break;
    }
    if (!good) bad.push_back(fn.id);
  }
  return bad;
}

bool VerificationReport::all_match() const {
  for (const NodeCheck& c : checks)
    if (!c.skipped && !c.ok()) return false;
  return true;
}

size_t VerificationReport::skipped_count() const {
  size_t k = 0;
  for (const NodeCheck& c : checks)
    if (c.skipped) ++k;
  return k;
}

namespace {

// projective count cost: affine cone enumeration plus representatives
bool count_fits_budget(int n, uint32_t q, uint64_t budget) {
  uint64_t pts = 1;
  for (int i = 0; i <= n; ++i) {
    if (pts > budget / q) return false;
    pts *= q;
  }
  return pts <= budget;
}

}  // namespace

namespace {

// A characteristic-0 residue claim does not specialize at p when some goal
// polynomial reduces to zero mod p (content divisible by p). Base rules keep
// their counting guarantee under any reduction; claims derived from children
// via a residue equation inherit the defect.
bool reduces_to_zero(const MPoly& f, const FieldCtx& ctx) {
  if (f.is_zero()) return false;
  for (const Term& t : f.terms())
    if (ctx.reduce_int(t.coeff) != 0) return false;
  return true;
}

std::vector<bool> degenerate_flags(const std::vector<FlatNode>& flat, const FieldCtx& ctx) {
  std::vector<bool> flag(flat.size(), false);
  for (size_t i = flat.size(); i-- > 0;) {  // children have larger ids
    const FlatNode& fn = flat[i];
    for (const MPoly& f : fn.node->goal.polys)
      if (reduces_to_zero(f, ctx)) flag[i] = true;
    switch (fn.node->rule) {
      case Rule::SpecialForm:
      case Rule::PermuteVars:
      case Rule::UnionSplit:
      case Rule::SystemSplit:
        for (int cid : fn.child_ids)
          if (flag[cid]) flag[i] = true;
        break;
      default:
        break;
    }
  }
  return flag;
}

}  // namespace

VerificationReport certificate_verify(const Certificate& cert,
                                      const std::vector<uint32_t>& primes, uint64_t budget) {
  VerificationReport report;
  std::vector<FlatNode> flat = flatten(cert);

  for (uint32_t p : primes) {
    FieldCtx ctx = FieldCtx::create(p, 1, std::max<uint64_t>(FieldCtx::kDefaultMaxQ, p));
    const uint32_t q = ctx.q();
    std::vector<bool> degenerate = degenerate_flags(flat, ctx);

    // pass 1: point counts per node, where affordable and well-posed
    std::vector<std::optional<uint64_t>> counts(flat.size());
    for (const FlatNode& fn : flat) {
      const Goal& goal = fn.node->goal;
      if (degenerate[fn.id] || !count_fits_budget(goal.n, q, budget)) continue;
      counts[fn.id] = count_projective(goal.counting_system(), goal.n, ctx, budget);
    }

    // pass 2: residue and rule-identity checks
    for (const FlatNode& fn : flat) {
      const CertNode& node = *fn.node;
      NodeCheck check;
      check.node = fn.id;
      check.rule = rule_name(node.rule);
      check.q = q;
      check.predicted = node.residue;
      if (degenerate[fn.id]) {
        check.skipped = true;
        check.skip_reason = "degenerate reduction mod p (claim is characteristic-0)";
        report.checks.push_back(std::move(check));
        continue;
      }
      if (!counts[fn.id]) {
        check.skipped = true;
        check.skip_reason = "enumeration budget exceeded";
        report.checks.push_back(std::move(check));
        continue;
      }
      uint64_t count = *counts[fn.id];
      check.points = count;
      check.counted = balanced_mod(Int(static_cast<unsigned long>(count)), q);
      Int diff = Int(static_cast<unsigned long>(count)) - Int(static_cast<long>(node.residue));
      check.residue_match = mod_u32(diff, q) == 0;

      auto child_count = [&](size_t i) -> std::optional<uint64_t> {
        if (i >= fn.child_ids.size()) return std::nullopt;
        return counts[fn.child_ids[i]];
      };

      switch (node.rule) {
        case Rule::EmptyOrFull:
          check.identity_ok =
              count == (node.residue == 1 ? projective_space_size(node.goal.n, q) : 0);
          break;
        case Rule::LinearBase:
          check.identity_ok = count == projective_space_size(node.goal.n - 1, q);
          break;
        case Rule::ConeReduction: {
          std::optional<uint64_t> base = child_count(0);
          if (!base && node.var && count_fits_budget(node.goal.n - 1, q, budget)) {
            std::vector<MPoly> dropped{node.goal.polys[0].dropped_var(*node.var)};
            base = count_projective(dropped, node.goal.n - 1, ctx, budget);
          }
          if (base) check.identity_ok = count == q * *base + 1;
          break;
        }
        case Rule::SpecialForm: {
          std::optional<uint64_t> low_count = child_count(0);
          if (low_count && node.f_low && node.f_high &&
              count_fits_budget(node.goal.n - 1, q, budget)) {
            std::vector<MPoly> pair{*node.f_low, *node.f_high};
            uint64_t both = count_projective(pair, node.goal.n - 1, ctx, budget);
            check.identity_ok = count == q * both + 1 +
                                             projective_space_size(node.goal.n - 1, q) -
                                             *low_count;
          }
          break;
        }
        case Rule::PermuteVars:
          if (child_count(0)) check.identity_ok = count == *child_count(0);
          break;
        case Rule::UnionSplit:
        case Rule::SystemSplit: {
          auto a = child_count(0), b = child_count(1), c = child_count(2);
          if (a && b && c)
            check.identity_ok =
                static_cast<int64_t>(count) ==
                static_cast<int64_t>(*a) + static_cast<int64_t>(*b) - static_cast<int64_t>(*c);
          break;
        }
        default:
          break;
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace kvar
