#pragma once

// Seeded instance generators and naive reference evaluators shared by the
// unit tests and the acceptance runner.  The evaluators deliberately avoid
// the library's enumeration code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "abskernel/absio.h"
#include "abskernel/model.h"
#include "abskernel/reductions.h"

namespace testing_support {

using namespace abskernel;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline int nonzero(Rng& rng, int lo, int hi) {
  int w = 0;
  while (w == 0) w = uniform(rng, lo, hi);
  return w;
}

// Random clause over distinct variables of 1..n; never tautological.
inline Clause random_clause(Rng& rng, int n, int width, bool monotone) {
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(vars.begin(), vars.end(), rng);
  Clause c;
  for (int i = 0; i < std::min(width, n); ++i) {
    c.push_back({vars[static_cast<std::size_t>(i)], monotone || uniform(rng, 0, 1) == 1});
  }
  return c;
}

struct FormulaShape {
  int max_vars = 8;
  int max_clauses = 10;
  int min_width = 0;
  int max_width = 3;
  int max_weight = 5;
  int max_alpha = 4;
  bool monotone = false;
};

inline std::vector<WeightedClause> random_clauses(Rng& rng, int n, const FormulaShape& s) {
  std::vector<WeightedClause> out;
  const int m = uniform(rng, 0, s.max_clauses);
  for (int j = 0; j < m; ++j) {
    const int width = uniform(rng, std::min(s.min_width, n), std::min(s.max_width, n));
    out.push_back({random_clause(rng, n, width, s.monotone), uniform(rng, -s.max_weight, s.max_weight)});
  }
  return out;
}

inline WeightedFormula random_formula(Rng& rng, NormalForm kind, const FormulaShape& s) {
  const int n = uniform(rng, 1, s.max_vars);
  return WeightedFormula(kind, n, random_clauses(rng, n, s), uniform(rng, 0, s.max_alpha));
}

inline WeightedHypergraph random_hypergraph(Rng& rng, int max_vertices, int max_edges, int max_d,
                                            int max_weight, int max_alpha) {
  const int n = uniform(rng, 1, max_vertices);
  const int d = uniform(rng, 1, max_d);
  std::vector<WeightedEdge> edges;
  const int m = uniform(rng, 0, max_edges);
  for (int j = 0; j < m; ++j) {
    const Clause c = random_clause(rng, n, uniform(rng, 0, std::min(d, n)), true);
    VertexSet vs;
    for (const auto& l : c) vs.push_back(l.var);
    edges.push_back({vs, uniform(rng, -max_weight, max_weight)});
  }
  return WeightedHypergraph(n, std::move(edges), uniform(rng, 0, max_alpha), d);
}

// Naive satisfaction check on a raw clause.
inline bool satisfies(NormalForm kind, const Clause& c, const std::vector<bool>& beta) {
  if (kind == NormalForm::dnf) {
    for (const auto& l : c) {
      if (beta[static_cast<std::size_t>(l.var - 1)] != l.positive) return false;
    }
    return true;
  }
  for (const auto& l : c) {
    if (beta[static_cast<std::size_t>(l.var - 1)] == l.positive) return true;
  }
  return false;
}

inline std::vector<bool> assignment_from_mask(int n, std::uint64_t mask) {
  std::vector<bool> beta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) beta[static_cast<std::size_t>(i)] = ((mask >> i) & 1U) != 0;
  return beta;
}

inline Weight naive_value(NormalForm kind, const std::vector<WeightedClause>& clauses,
                          const std::vector<bool>& beta) {
  Weight total = 0;
  for (const auto& c : clauses) {
    if (satisfies(kind, c.literals, beta)) total += c.weight;
  }
  return total;
}

inline Weight naive_value(const WeightedFormula& f, const std::vector<bool>& beta) {
  return naive_value(f.kind(), f.clauses(), beta);
}

inline bool naive_meets(const Weight& v, const WeightedFormula& f) {
  const Weight x = f.objective() == Objective::abs ? Weight(boost::multiprecision::abs(v)) : v;
  switch (f.comparison()) {
    case Comparison::at_least: return x >= f.alpha();
    case Comparison::exact: return x == f.alpha();
    case Comparison::at_most: return x <= f.alpha();
  }
  return false;
}

inline bool naive_decide(const WeightedFormula& f) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.num_vars()); ++m) {
    if (naive_meets(naive_value(f, assignment_from_mask(f.num_vars(), m)), f)) return true;
  }
  return false;
}

inline Weight naive_induced(const WeightedHypergraph& h, const std::set<int>& x) {
  Weight total = 0;
  for (const auto& e : h.edges()) {
    if (std::all_of(e.vertices.begin(), e.vertices.end(), [&](int v) { return x.count(v) > 0; })) {
      total += e.weight;
    }
  }
  return total;
}

inline Weight naive_max_abs(const WeightedHypergraph& h) {
  Weight best = 0;
  const auto& vs = h.vertices();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << vs.size()); ++m) {
    std::set<int> x;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if ((m >> i) & 1U) x.insert(vs[i]);
    }
    best = std::max(best, Weight(boost::multiprecision::abs(naive_induced(h, x))));
  }
  return best;
}

inline bool naive_decide(const WeightedHypergraph& h) { return naive_max_abs(h) >= h.alpha(); }

// Independent set of size k by subset enumeration.
inline bool has_independent_set(const Graph& g, int k) {
  const int n = g.num_vertices();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) != k) continue;
    bool ok = true;
    for (const auto& [u, v] : g.edges()) {
      if (((m >> (u - 1)) & 1U) && ((m >> (v - 1)) & 1U)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

inline Graph random_graph(Rng& rng, int n, double p) {
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution coin(p);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

// Six-vertex example graph: hexagon a..f plus chords a-c and c-e.
inline Graph six_vertex_graph() {
  return Graph(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}, {1, 3}, {3, 5}});
}

// Instances on which the degree rule fires: either singleton edges only
// (d = 1, Delta = 1) or disjoint cycles with optional singleton subedges
// (d = 2, Delta <= 3), sized to meet 2 alpha d^3 Delta^2.
inline WeightedHypergraph degree_rule_instance(Rng& rng) {
  const int alpha = uniform(rng, 1, 2);
  std::vector<WeightedEdge> edges;
  int n = 0;
  if (uniform(rng, 0, 1) == 0) {
    n = 2 * alpha + uniform(rng, 0, 6);
    for (int v = 1; v <= n; ++v) edges.push_back({{v}, nonzero(rng, -5, 5)});
  } else {
    n = 144 * alpha + uniform(rng, 0, 20);
    const bool singletons = uniform(rng, 0, 1) == 1;
    int start = 1;
    while (start <= n) {
      int len = std::min(uniform(rng, 3, 12), n - start + 1);
      if (n - (start + len) + 1 < 3) len = n - start + 1;
      for (int i = 0; i < len; ++i) {
        const int u = start + i;
        const int v = start + (i + 1) % len;
        if (len >= 3 || i == 0) edges.push_back({{std::min(u, v), std::max(u, v)}, nonzero(rng, -5, 5)});
        if (singletons && uniform(rng, 0, 3) == 0) edges.push_back({{u}, nonzero(rng, -5, 5)});
      }
      start += len;
    }
  }
  if (uniform(rng, 0, 2) == 0) edges.push_back({{}, nonzero(rng, -5, 5)});
  return WeightedHypergraph(n, std::move(edges), alpha);
}

// Instances on which the subedge rule fires with a core of the given size
// (0, 1 or 2).  Core size s uses d = s + 1, where g(1) = 2 alpha 2^(2^d).
// Extra edges of random sign around the sunflower act as noise.
inline WeightedHypergraph subedge_rule_instance(Rng& rng, int core_size) {
  const int d = core_size + 1;
  const int alpha = core_size == 2 ? uniform(rng, 1, 2) : uniform(rng, 1, 4);
  const int petals = 2 * alpha * (1 << (1 << d)) + uniform(rng, 0, 10);
  const int n = core_size + petals;
  std::vector<WeightedEdge> edges;
  VertexSet core;
  for (int i = 1; i <= core_size; ++i) core.push_back(i);
  for (int p = core_size + 1; p <= n; ++p) {
    VertexSet e = core;
    e.push_back(p);
    edges.push_back({e, nonzero(rng, -3, 3)});
  }
  // Noise: small edges that do not contain the whole core.
  const int noise = core_size == 0 ? 0 : uniform(rng, 0, 30);
  for (int j = 0; j < noise; ++j) {
    const int size = uniform(rng, 1, d);
    VertexSet e;
    while (static_cast<int>(e.size()) < size) {
      const int v = uniform(rng, 1, n);
      if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    if (core_size > 0 && std::includes(e.begin(), e.end(), core.begin(), core.end())) continue;
    edges.push_back({e, nonzero(rng, -3, 3)});
  }
  if (uniform(rng, 0, 2) == 0) edges.push_back({{}, nonzero(rng, -5, 5)});
  return WeightedHypergraph(n, std::move(edges), alpha, d);
}

// Direct polynomial evaluation with 0^0 = 1.
inline Weight naive_poly(const AbsIoInstance& inst, const std::vector<long long>& x) {
  Weight total = 0;
  for (const auto& c : inst.columns) {
    Weight term = c.weight;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (unsigned k = 0; k < c.exponents[i]; ++k) term *= x[i];
    }
    total += term;
  }
  return total;
}

// Maximum |p| over a finite box, by nested enumeration.
inline std::optional<Weight> naive_box_max_abs(const AbsIoInstance& inst) {
  const auto n = static_cast<std::size_t>(inst.num_vars);
  std::vector<long long> lo(n);
  std::vector<long long> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = inst.lower[i].value().convert_to<long long>();
    hi[i] = inst.upper[i].value().convert_to<long long>();
    if (hi[i] < lo[i]) return std::nullopt;
  }
  std::vector<long long> x = lo;
  Weight best = -1;
  while (true) {
    best = std::max(best, Weight(boost::multiprecision::abs(naive_poly(inst, x))));
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == n) return best;
    ++x[i];
  }
}

inline bool naive_decide(const AbsIoInstance& inst) {
  const auto best = naive_box_max_abs(inst);
  return best && *best >= inst.alpha;
}

struct AbsIoShape {
  int max_vars = 4;
  int max_columns = 6;
  unsigned max_exponent = 2;
  int bound = 6;
  int max_weight = 5;
  int max_alpha = 4;
};

inline AbsIoInstance random_absio(Rng& rng, const AbsIoShape& s) {
  const int n = uniform(rng, 1, s.max_vars);
  std::vector<AbsIoColumn> cols;
  const int m = uniform(rng, 0, s.max_columns);
  for (int j = 0; j < m; ++j) {
    AbsIoColumn c{std::vector<unsigned>(static_cast<std::size_t>(n), 0), uniform(rng, -s.max_weight, s.max_weight)};
    for (auto& e : c.exponents) e = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(s.max_exponent)));
    cols.push_back(std::move(c));
  }
  AbsIoInstance inst(n, std::move(cols), uniform(rng, 0, s.max_alpha));
  for (int i = 0; i < n; ++i) {
    const int a = uniform(rng, -s.bound, s.bound);
    const int b = uniform(rng, -s.bound, s.bound);
    inst.lower[static_cast<std::size_t>(i)] = std::min(a, b);
    inst.upper[static_cast<std::size_t>(i)] = std::max(a, b);
  }
  return inst;
}

inline bool in_box(const AbsIoInstance& inst, const AbsIoPoint& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (ExtInt(x[i]) < inst.lower[i] || ExtInt(x[i]) > inst.upper[i]) return false;
  }
  return true;
}

}  // namespace testing_support
