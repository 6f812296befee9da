#include "abskernel/reductions.h"

#include <algorithm>
#include <map>
#include <optional>

#include "abskernel/errors.h"

namespace abskernel {

Graph::Graph(int num_vertices, std::vector<std::pair<int, int>> edges)
    : num_vertices_(num_vertices) {
  if (num_vertices < 0) throw InputError("negative vertex count");
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > num_vertices || v > num_vertices) {
      throw InputError("graph edge endpoint out of range");
    }
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  auto sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("repeated graph edge");
  }
}

std::vector<int> Graph::neighbours(int v) const {
  std::vector<int> out;
  for (auto [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Ordered clause list with merge-on-insert and provenance tracking.
class ClauseAccumulator {
 public:
  void add(Clause literals, const Weight& weight, const std::vector<std::size_t>& sources) {
    auto it = index_.find(literals);
    if (it != index_.end()) {
      Entry& e = entries_[it->second];
      e.weight += weight;
      merge_sources(e.sources, sources);
      return;
    }
    index_.emplace(literals, entries_.size());
    entries_.push_back({std::move(literals), weight, sources, true});
  }

  void remove(std::size_t i) {
    index_.erase(entries_[i].literals);
    entries_[i].live = false;
  }

  std::size_t size() const { return entries_.size(); }
  bool live(std::size_t i) const { return entries_[i].live; }
  const Clause& literals(std::size_t i) const { return entries_[i].literals; }
  const Weight& weight(std::size_t i) const { return entries_[i].weight; }
  const std::vector<std::size_t>& sources(std::size_t i) const { return entries_[i].sources; }

  std::pair<std::vector<WeightedClause>, std::vector<std::vector<std::size_t>>> finish() const {
    std::vector<WeightedClause> clauses;
    std::vector<std::vector<std::size_t>> sources;
    for (const auto& e : entries_) {
      if (!e.live) continue;
      clauses.push_back({e.literals, e.weight});
      sources.push_back(e.sources);
    }
    return {std::move(clauses), std::move(sources)};
  }

 private:
  struct Entry {
    Clause literals;
    Weight weight;
    std::vector<std::size_t> sources;
    bool live;
  };

  static void merge_sources(std::vector<std::size_t>& into, const std::vector<std::size_t>& from) {
    std::vector<std::size_t> merged;
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(merged));
    into = std::move(merged);
  }

  std::vector<Entry> entries_;
  std::map<Clause, std::size_t> index_;
};

std::string kind_name(const WeightedFormula& f) {
  std::string s = f.objective() == Objective::abs ? "abs-" : "max-";
  if (f.monotone()) s += "monotone-";
  return s + to_string(f.kind());
}

std::optional<std::size_t> negative_position(const Clause& c, EliminationOrder order) {
  std::optional<std::size_t> pos;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].positive) continue;
    if (order == EliminationOrder::lowest_first) return i;
    pos = i;
  }
  return pos;
}

}  // namespace

std::pair<WeightedFormula, ReductionReceipt> monotonize_abs_dnf(const WeightedFormula& formula,
                                                                EliminationOrder order) {
  if (formula.kind() != NormalForm::dnf) throw ContractError("monotonization expects a DNF");
  ClauseAccumulator acc;
  for (std::size_t i = 0; i < formula.clauses().size(); ++i) {
    const auto& c = formula.clauses()[i];
    acc.add(c.literals, c.weight, {i});
  }
  // Replace c by c+ (drop the negated literal, same weight) and
  // c- (c+ plus the positive literal, negated weight) until monotone.
  for (std::size_t i = 0; i < acc.size(); ++i) {
    while (acc.live(i)) {
      const auto pos = negative_position(acc.literals(i), order);
      if (!pos) break;
      Clause plus = acc.literals(i);
      const int var = plus[*pos].var;
      plus.erase(plus.begin() + static_cast<std::ptrdiff_t>(*pos));
      Clause minus = plus;
      minus.insert(std::lower_bound(minus.begin(), minus.end(), Literal{var, true}),
                   Literal{var, true});
      const Weight w = acc.weight(i);
      const auto sources = acc.sources(i);
      acc.remove(i);
      acc.add(std::move(plus), w, sources);
      acc.add(std::move(minus), -w, sources);
    }
  }
  auto [clauses, sources] = acc.finish();
  WeightedFormula out(NormalForm::dnf, formula.num_vars(), std::move(clauses), formula.alpha(),
                      formula.objective(), formula.comparison());
  ReductionReceipt receipt{kind_name(formula), kind_name(out), formula.num_vars(),
                           std::move(sources)};
  return {std::move(out), std::move(receipt)};
}

std::pair<WeightedHypergraph, ReductionReceipt> encode_dnf_as_hypergraph(
    const WeightedFormula& formula) {
  if (formula.kind() != NormalForm::dnf || !formula.monotone()) {
    throw ContractError("hypergraph encoding expects a monotone DNF");
  }
  std::vector<WeightedEdge> edges;
  ReductionReceipt receipt{kind_name(formula), "unbalanced-subgraph", formula.num_vars(), {}};
  for (std::size_t i = 0; i < formula.clauses().size(); ++i) {
    const auto& c = formula.clauses()[i];
    VertexSet vs;
    for (const auto& l : c.literals) vs.push_back(l.var);
    edges.push_back({std::move(vs), c.weight});
    receipt.sources.push_back({i});
  }
  WeightedHypergraph graph(formula.num_vars(), std::move(edges), formula.alpha(), formula.width());
  return {std::move(graph), std::move(receipt)};
}

std::pair<WeightedFormula, ReductionReceipt> abs_cnf_to_abs_dnf(const WeightedFormula& formula,
                                                                const ReductionLimits& limits) {
  if (formula.kind() != NormalForm::cnf) throw ContractError("truth-table expansion expects a CNF");
  if (formula.width() > limits.max_expansion_width) {
    throw BudgetError("clause width " + std::to_string(formula.width()) +
                      " exceeds truth-table cap " + std::to_string(limits.max_expansion_width));
  }
  ClauseAccumulator acc;
  for (std::size_t i = 0; i < formula.clauses().size(); ++i) {
    const auto& c = formula.clauses()[i];
    const std::size_t t = c.literals.size();
    // Row bits: the first literal's variable is the most significant bit.
    for (std::uint64_t row = (std::uint64_t{1} << t); row-- > 0;) {
      Clause minterm;
      bool satisfies = false;
      for (std::size_t j = 0; j < t; ++j) {
        const bool value = (row >> (t - 1 - j)) & 1U;
        minterm.push_back({c.literals[j].var, value});
        if (value == c.literals[j].positive) satisfies = true;
      }
      if (satisfies) acc.add(std::move(minterm), c.weight, {i});
    }
  }
  auto [clauses, sources] = acc.finish();
  WeightedFormula out(NormalForm::dnf, formula.num_vars(), std::move(clauses), formula.alpha(),
                      formula.objective(), formula.comparison());
  ReductionReceipt receipt{kind_name(formula), kind_name(out), formula.num_vars(),
                           std::move(sources)};
  return {std::move(out), std::move(receipt)};
}

std::pair<WeightedFormula, ReductionReceipt> expand_conjunctions_to_disjunctions(
    const WeightedFormula& formula, const ReductionLimits& limits) {
  if (formula.kind() != NormalForm::dnf || !formula.monotone()) {
    throw ContractError("conjunction expansion expects a monotone DNF");
  }
  if (formula.width() > limits.max_expansion_width) {
    throw BudgetError("clause width " + std::to_string(formula.width()) +
                      " exceeds expansion cap " + std::to_string(limits.max_expansion_width));
  }
  ClauseAccumulator acc;
  for (std::size_t i = 0; i < formula.clauses().size(); ++i) {
    const auto& c = formula.clauses()[i];
    const std::size_t t = c.literals.size();
    if (t == 0) throw ContractError("conjunction expansion is undefined for the empty clause");
    // Nonempty subsets by size, then lexicographically.
    std::vector<Clause> subsets;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << t); ++m) {
      Clause sub;
      for (std::size_t j = 0; j < t; ++j) {
        if ((m >> j) & 1U) sub.push_back(c.literals[j]);
      }
      subsets.push_back(std::move(sub));
    }
    std::sort(subsets.begin(), subsets.end(), [](const Clause& a, const Clause& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& sub : subsets) {
      const Weight w = sub.size() % 2 == 1 ? c.weight : Weight(-c.weight);
      acc.add(std::move(sub), w, {i});
    }
  }
  auto [clauses, sources] = acc.finish();
  WeightedFormula out(NormalForm::cnf, formula.num_vars(), std::move(clauses), formula.alpha(),
                      formula.objective(), formula.comparison());
  ReductionReceipt receipt{kind_name(formula), kind_name(out), formula.num_vars(),
                           std::move(sources)};
  return {std::move(out), std::move(receipt)};
}

WeightedFormula gen_is_to_max_monotone_dnf(const Graph& graph, int k) {
  if (k < 0) throw InputError("k must be non-negative");
  std::vector<WeightedClause> clauses;
  for (int v = 1; v <= graph.num_vertices(); ++v) clauses.push_back({{{v, true}}, 1});
  for (auto [u, v] : graph.edges()) clauses.push_back({{{u, true}, {v, true}}, -1});
  return WeightedFormula(NormalForm::dnf, graph.num_vertices(), std::move(clauses), k,
                         Objective::sum, Comparison::at_least);
}

WeightedFormula gen_is_to_abs_monotone_dnf_np(const Graph& graph, int k) {
  if (k < 0) throw InputError("k must be non-negative");
  // Per vertex v: v1+, v2+, v1-, v2- in that order.
  auto var = [](int v, int copy) { return 4 * (v - 1) + copy; };
  std::vector<WeightedClause> clauses;
  for (int v = 1; v <= graph.num_vertices(); ++v) {
    clauses.push_back({{{var(v, 1), true}, {var(v, 2), true}}, -1});
    clauses.push_back({{{var(v, 3), true}, {var(v, 4), true}}, 1});
  }
  for (auto [u, v] : graph.edges()) {
    clauses.push_back({{{var(u, 1), true}, {var(v, 1), true}}, 1});
    clauses.push_back({{{var(u, 3), true}, {var(v, 3), true}}, -1});
  }
  const Weight alpha = Weight(k) + static_cast<long>(graph.edges().size());
  return WeightedFormula(NormalForm::dnf, 4 * graph.num_vertices(), std::move(clauses), alpha,
                         Objective::abs, Comparison::at_least);
}

WeightedFormula gen_is_to_abs_monotone_dnf_w1(const Graph& graph, int k) {
  if (k < 0) throw InputError("k must be non-negative");
  std::vector<WeightedClause> clauses;
  for (int v = 1; v <= graph.num_vertices(); ++v) {
    Clause nbrs;
    for (int w : graph.neighbours(v)) nbrs.push_back({w, true});
    clauses.push_back({std::move(nbrs), 1});
  }
  for (int v = 1; v <= graph.num_vertices(); ++v) {
    Clause closed{{v, true}};
    for (int w : graph.neighbours(v)) closed.push_back({w, true});
    clauses.push_back({std::move(closed), -1});
  }
  return WeightedFormula(NormalForm::dnf, graph.num_vertices(), std::move(clauses), k,
                         Objective::abs, Comparison::at_least);
}

namespace {

WeightedFormula with_offset_clause(const WeightedFormula& formula, const Weight& alpha,
                                   Comparison comparison) {
  if (formula.kind() != NormalForm::dnf) {
    throw ContractError("the offset construction needs a DNF (the empty DNF clause is always true)");
  }
  if (alpha < 0) throw InputError("target must be non-negative");
  auto clauses = formula.clauses();
  if (alpha != 0) clauses.push_back({{}, Weight(-alpha)});
  return WeightedFormula(NormalForm::dnf, formula.num_vars(), std::move(clauses), 0,
                         Objective::abs, comparison);
}

}  // namespace

WeightedFormula gen_exact_variant(const WeightedFormula& formula, const Weight& alpha) {
  return with_offset_clause(formula, alpha, Comparison::exact);
}

WeightedFormula gen_min_variant(const WeightedFormula& formula, const Weight& alpha) {
  return with_offset_clause(formula, alpha, Comparison::at_most);
}

}  // namespace abskernel
