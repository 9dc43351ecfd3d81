#include "kvar/potts.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kvar/counting.hpp"
#include "kvar/kclass.hpp"

namespace kvar {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }

  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i)
      if (find(i) == i) ++c;
    return c;
  }
};

int components_of_subset(const Graph& g, uint32_t mask) {
  UnionFind uf(g.vertex_count);
  for (int e = 0; e < g.edge_count(); ++e)
    if (mask & (1u << e)) uf.unite(g.edges[e].first, g.edges[e].second);
  return uf.components();
}

}  // namespace

bool Graph::has_loop() const {
  for (auto [u, v] : edges)
    if (u == v) return true;
  return false;
}

int Graph::component_count() const {
  UnionFind uf(vertex_count);
  for (auto [u, v] : edges) uf.unite(u, v);
  return uf.components();
}

bool Graph::connected() const { return vertex_count > 0 && component_count() == 1; }

Graph graph_parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long lineno = 0;
  Graph g;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (!have_header) {
      std::size_t used = 0;
      try {
        g.vertex_count = std::stoi(first, &used);
      } catch (...) {
        fail(Errc::SyntaxError, "expected vertex count", lineno);
      }
      if (used != first.size() || g.vertex_count < 0)
        fail(Errc::SyntaxError, "expected vertex count", lineno);
      std::string extra;
      if (ls >> extra) fail(Errc::SyntaxError, "unexpected token after vertex count", lineno);
      have_header = true;
      continue;
    }
    int u = 0, v = 0;
    std::size_t used = 0;
    std::string second;
    try {
      u = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument("");
      if (!(ls >> second)) throw std::invalid_argument("");
      v = std::stoi(second, &used);
      if (used != second.size()) throw std::invalid_argument("");
    } catch (...) {
      fail(Errc::SyntaxError, "expected an edge line 'u v'", lineno);
    }
    std::string extra;
    if (ls >> extra) fail(Errc::SyntaxError, "unexpected token after edge", lineno);
    if (u < 0 || u >= g.vertex_count || v < 0 || v >= g.vertex_count)
      fail(Errc::VertexOutOfRange,
           "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range", lineno);
    g.edges.push_back({u, v});
  }
  if (!have_header) fail(Errc::SyntaxError, "empty graph file", 0);
  return g;
}

MPoly potts_polynomial(const Graph& g, const Int& q_val, int subset_budget_bits) {
  int n = g.edge_count();
  if (n < 1) fail(Errc::BadInput, "hypersurface construction needs at least one edge");
  if (q_val == 0) fail(Errc::ZeroQ, "q = 0 kills the leading form");
  if (n > subset_budget_bits || n > 30)
    fail(Errc::BudgetExceeded, "2^" + std::to_string(n) + " edge subsets exceed the budget");

  std::vector<Term> terms;
  terms.reserve(1u << n);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int k = components_of_subset(g, mask);
    Expvec e(n, 0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) e[i] = 1;
    terms.push_back({std::move(e), int_pow(q_val, static_cast<unsigned long>(k))});
  }
  return MPoly::from_terms(n, std::move(terms));
}

int potts_mod_L(const Graph& g) {
  if (g.edge_count() < 1) fail(Errc::BadInput, "need at least one edge");
  return g.edge_count() % 2 == 1 ? 1 : -1;
}

PottsSymbolic potts_class_symbolic(const Graph& g, const Int& q_val, int subset_budget_bits) {
  int n = g.edge_count();
  MPoly z = potts_polynomial(g, q_val, subset_budget_bits);

  // the degree-n part must be a single nonzero multiple of t_1...t_n
  Expvec full(n, 1);
  const Int* lead = z.coeff_of(full);
  if (lead == nullptr || *lead == 0)
    fail(Errc::LeadingFormUnexpected, "degree-n coefficient vanished");
  for (const Term& t : z.terms()) {
    int deg = 0;
    for (uint32_t e : t.exps) deg += static_cast<int>(e);
    if (deg == n && t.exps != full)
      fail(Errc::LeadingFormUnexpected, "unexpected degree-n monomial");
  }

  PottsSymbolic out;
  out.homogenized = z.inserted_var(0).homogenized(0);
  out.certificate = certify_multidegree(out.homogenized, n);
  out.projective_residue = out.certificate.residue();
  out.residue =
      out.projective_residue - to_i64(class_coordinate_hyperplane_union(n).mod_L());
  if (out.residue != potts_mod_L(g))
    fail(Errc::InternalDisagreement, "symbolic residue disagrees with the parity rule");
  return out;
}

bool PottsVerifyReport::all_match() const {
  for (const PottsVerifyRow& r : rows)
    if (!r.skipped && !r.match) return false;
  return true;
}

PottsVerifyReport potts_verify(const Graph& g, const Int& q_val,
                               const std::vector<uint32_t>& primes, uint64_t budget) {
  int n = g.edge_count();
  MPoly z = potts_polynomial(g, q_val);
  int predicted = potts_mod_L(g);

  PottsVerifyReport report;
  for (uint32_t p : primes) {
    PottsVerifyRow row;
    row.prime = p;
    row.predicted = predicted;
    // Z_G has coefficients q^k: when p divides q it reduces to the zero
    // polynomial and the characteristic-0 claim does not specialize
    if (mod_u32(q_val, p) == 0) {
      row.skipped = true;
      row.skip_reason = "p divides q; the hypersurface degenerates mod p";
      report.rows.push_back(std::move(row));
      continue;
    }
    FieldCtx ctx = FieldCtx::create(p, 1, std::max<uint64_t>(FieldCtx::kDefaultMaxQ, p));
    try {
      std::vector<MPoly> sys{z};
      row.count = count_affine(sys, n, ctx, budget);
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      row.skipped = true;
      row.skip_reason = "p^n exceeds evaluation budget";
      report.rows.push_back(std::move(row));
      continue;
    }
    row.counted_residue = balanced_mod(Int(static_cast<unsigned long>(row.count)), p);
    row.match = mod_u32(Int(static_cast<unsigned long>(row.count)) - predicted, p) == 0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace kvar
