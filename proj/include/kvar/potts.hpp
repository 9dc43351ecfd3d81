#ifndef KVAR_POTTS_HPP
#define KVAR_POTTS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kvar/certify.hpp"
#include "kvar/mpoly.hpp"

namespace kvar {

// Multigraph with loops permitted. Edge order is significant: edge e owns the
// polynomial variable t_{e+1}.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_loop() const;
  int component_count() const;  // isolated vertices included
  bool connected() const;
};

// Format: first line the vertex count, then one "u v" pair per line.
Graph graph_parse(std::string_view text);

inline constexpr int kDefaultSubsetBudgetBits = 20;

// Partition-function polynomial: sum over edge subsets A of
// q_val^{components(V, A)} * prod_{e in A} t_e, multilinear in t_1..t_n.
// Variable index e corresponds to t_{e+1}.
MPoly potts_polynomial(const Graph& g, const Int& q_val,
                       int subset_budget_bits = kDefaultSubsetBudgetBits);

// Residue of the affine hypersurface class mod L: +1 for an odd number of
// edges, -1 for an even number.
int potts_mod_L(const Graph& g);

struct PottsSymbolic {
  int64_t residue = 0;        // class of the affine hypersurface mod L
  int64_t projective_residue = 0;  // residue of Z(F) for the homogenization F
  MPoly homogenized;          // F, in variables x0 (homogenizer), t_1..t_n
  Certificate certificate;    // reduction certificate for Z(F) in P^n
};

// Build Z_G, homogenize with x0, certify Z(F), and subtract the class of the
// coordinate hyperplane arrangement; the result must match potts_mod_L.
PottsSymbolic potts_class_symbolic(const Graph& g, const Int& q_val,
                                   int subset_budget_bits = kDefaultSubsetBudgetBits);

struct PottsVerifyRow {
  uint32_t prime = 0;
  bool skipped = false;
  std::string skip_reason;
  uint64_t count = 0;
  int64_t counted_residue = 0;
  int predicted = 0;
  bool match = false;
};

struct PottsVerifyReport {
  std::vector<PottsVerifyRow> rows;
  bool all_match() const;
};

// Affine point counts of Z_G = 0 over each prime; count mod p must equal
// potts_mod_L(g).
PottsVerifyReport potts_verify(const Graph& g, const Int& q_val,
                               const std::vector<uint32_t>& primes,
                               uint64_t budget = kDefaultBudget);

}  // namespace kvar

#endif
