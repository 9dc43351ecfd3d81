#ifndef KVAR_COUNTING_HPP
#define KVAR_COUNTING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "kvar/ffield.hpp"
#include "kvar/mpoly.hpp"

namespace kvar {

inline constexpr uint64_t kDefaultBudget = 100'000'000;

struct SpaceRef {
  enum Kind { Affine, Projective } kind;
  int n;
};

struct CountReport {
  std::vector<MPoly> system;
  SpaceRef space;
  uint32_t q = 0;
  uint64_t count = 0;
  int64_t residue = 0;  // balanced representative of count mod q
  bool applicable = false;
  bool violation = false;
  double elapsed_seconds = 0.0;
};

// Exact number of common zeros in A^n(F_q). Requires q^n <= budget points.
uint64_t count_affine(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                      uint64_t budget = kDefaultBudget);

// Exact number of common zeros in P^n(F_q), computed two independent ways
// (affine cone and normalized representatives) that must agree.
uint64_t count_projective(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                          uint64_t budget = kDefaultBudget);

// Chevalley-Warning residue checks. Affine: applicable when sum of degrees
// < n, and then count must be 0 mod q. Projective: applicable when sum of
// degrees < n + 1, and then count must be 1 mod q.
CountReport cw_check_affine(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                            uint64_t budget = kDefaultBudget);
CountReport cw_check_projective(std::span<const MPoly> system, int n, const FieldCtx& ctx,
                                uint64_t budget = kDefaultBudget);

// number of points of P^n(F_q)
uint64_t projective_space_size(int n, uint32_t q);
// q^n with a budget guard
uint64_t checked_power(uint32_t q, int n, uint64_t budget);

}  // namespace kvar

#endif
