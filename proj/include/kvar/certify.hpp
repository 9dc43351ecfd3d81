#ifndef KVAR_CERTIFY_HPP
#define KVAR_CERTIFY_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kvar/counting.hpp"
#include "kvar/kclass.hpp"
#include "kvar/mpoly.hpp"

namespace kvar {

enum class Rule {
  EmptyOrFull,
  ConeReduction,
  LinearBase,
  QuadricBase,
  CubicSurfaceBase,
  SpecialForm,
  UnionSplit,
  SystemSplit,
  PermuteVars,
};

const char* rule_name(Rule r);
Rule rule_from_name(std::string_view name);

enum class GoalKind { Hypersurface, System, Union };

// A goal is a subvariety of P^n: the zero set of one polynomial, of a system
// (common zeros), or of a product given by its factors (union).
struct Goal {
  std::vector<MPoly> polys;
  int n = 0;
  GoalKind kind = GoalKind::Hypersurface;

  std::string str() const;
  // the system whose common zeros are the goal (factors get multiplied out)
  std::vector<MPoly> counting_system() const;
};

struct CertNode {
  Goal goal;
  Rule rule = Rule::EmptyOrFull;
  int64_t residue = 0;  // established value of [goal] mod L
  bool trusted = false;
  std::optional<LPoly> exact_class;
  std::optional<int> var;                       // ConeReduction / SpecialForm variable
  std::optional<std::vector<int>> permutation;  // PermuteVars
  std::optional<MPoly> f_low, f_high;           // SpecialForm parts, in child coordinates
  std::vector<std::unique_ptr<CertNode>> children;
};

struct Certificate {
  std::unique_ptr<CertNode> root;

  int64_t residue() const { return root->residue; }
  size_t node_count() const;
};

struct CertifyOptions {
  bool exact_classes = true;
};

// Failure ("no reduction rule applies") is a result, not an error.
struct CertifyOutcome {
  std::optional<Certificate> certificate;
  std::string failure;

  bool ok() const { return certificate.has_value(); }
};

// Certify the mod-L residue of Z(system) in P^n. All polynomials must be
// homogeneous in n + 1 variables, n >= 1.
CertifyOutcome certify(const std::vector<MPoly>& system, int n, const CertifyOptions& = {});
// Same, for an explicitly factored hypersurface Z(f_1 * ... * f_m).
CertifyOutcome certify_union(const std::vector<MPoly>& factors, int n,
                             const CertifyOptions& = {});
// For a hypersurface of degree <= n with at most 4 variables of degree > 1
// the reduction always succeeds with residue 1; throws HypothesisViolated
// when the multidegree condition fails.
Certificate certify_multidegree(const MPoly& f, int n, const CertifyOptions& = {});

// Structural check: every internal node's residue equals its rule's residue
// equation applied to the children. Returns preorder ids of bad nodes.
std::vector<int> residue_algebra_violations(const Certificate& cert);

std::string certificate_to_json(const Certificate& cert, int indent = 2);
Certificate certificate_from_json(std::string_view text);

struct NodeCheck {
  int node = 0;
  std::string rule;
  uint32_t q = 0;
  bool skipped = false;
  std::string skip_reason;
  int64_t predicted = 0;
  int64_t counted = 0;  // balanced residue of the point count
  uint64_t points = 0;
  bool residue_match = false;
  std::optional<bool> identity_ok;  // rule's counting identity, when checkable

  bool ok() const { return residue_match && identity_ok.value_or(true); }
};

struct VerificationReport {
  std::vector<NodeCheck> checks;

  bool all_match() const;
  size_t skipped_count() const;
};

// Counts every node's goal over F_p for each prime and checks the stored
// residues, the per-rule counting identities and any attached exact classes.
// Nodes whose enumeration exceeds the budget are reported as skipped.
VerificationReport certificate_verify(const Certificate& cert,
                                      const std::vector<uint32_t>& primes,
                                      uint64_t budget = kDefaultBudget);

}  // namespace kvar

#endif
