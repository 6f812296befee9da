#include "abskernel/model.h"

#include <algorithm>
#include <map>
#include <thread>

#include "abskernel/errors.h"
#include "enumeration.h"

namespace abskernel {

std::string to_string(NormalForm f) { return f == NormalForm::cnf ? "cnf" : "dnf"; }
std::string to_string(Objective o) { return o == Objective::abs ? "abs" : "sum"; }
std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::at_least: return "atleast";
    case Comparison::exact: return "exact";
    case Comparison::at_most: return "atmost";
  }
  return "?";
}

bool contains(std::span<const int> sorted_superset, std::span<const int> sorted_subset) {
  return std::includes(sorted_superset.begin(), sorted_superset.end(), sorted_subset.begin(),
                       sorted_subset.end());
}

bool operator==(const WeightedClause& a, const WeightedClause& b) {
  return a.literals == b.literals && a.weight == b.weight;
}

bool operator==(const WeightedEdge& a, const WeightedEdge& b) {
  return a.vertices == b.vertices && a.weight == b.weight;
}

WeightedFormula::WeightedFormula(NormalForm kind, int num_vars, std::vector<WeightedClause> clauses,
                                 Weight alpha, Objective objective, Comparison comparison)
    : kind_(kind),
      num_vars_(num_vars),
      alpha_(std::move(alpha)),
      objective_(objective),
      comparison_(comparison) {
  if (num_vars_ < 0) throw InputError("negative variable count");
  if (alpha_ < 0) throw InputError("target must be non-negative");
  std::map<Clause, std::size_t> slot;
  for (auto& c : clauses) {
    std::sort(c.literals.begin(), c.literals.end());
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      const Literal& lit = c.literals[i];
      if (lit.var < 1 || lit.var > num_vars_) {
        throw InputError("variable " + std::to_string(lit.var) + " out of range 1.." +
                         std::to_string(num_vars_));
      }
      if (i > 0 && c.literals[i - 1].var == lit.var) {
        if (c.literals[i - 1].positive != lit.positive) {
          throw InputError("clause contains variable " + std::to_string(lit.var) +
                           " and its negation");
        }
        throw InputError("variable " + std::to_string(lit.var) + " repeated in clause");
      }
    }
    auto [it, inserted] = slot.try_emplace(c.literals, clauses_.size());
    if (inserted) {
      clauses_.push_back(std::move(c));
    } else {
      clauses_[it->second].weight += c.weight;
    }
  }
}

bool WeightedFormula::monotone() const {
  return std::all_of(clauses_.begin(), clauses_.end(), [](const WeightedClause& c) {
    return std::all_of(c.literals.begin(), c.literals.end(),
                       [](const Literal& l) { return l.positive; });
  });
}

int WeightedFormula::width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.literals.size());
  return static_cast<int>(w);
}

bool operator==(const WeightedFormula& a, const WeightedFormula& b) {
  return a.kind_ == b.kind_ && a.num_vars_ == b.num_vars_ && a.clauses_ == b.clauses_ &&
         a.alpha_ == b.alpha_ && a.objective_ == b.objective_ && a.comparison_ == b.comparison_;
}

WeightedHypergraph::WeightedHypergraph(int num_vertices, std::vector<WeightedEdge> edges,
                                       Weight alpha, int d)
    : alpha_(std::move(alpha)) {
  if (num_vertices < 0) throw InputError("negative vertex count");
  vertices_.resize(static_cast<std::size_t>(num_vertices));
  for (int v = 1; v <= num_vertices; ++v) vertices_[static_cast<std::size_t>(v - 1)] = v;
  init(std::move(edges), d);
}

WeightedHypergraph::WeightedHypergraph(VertexSet vertices, std::vector<WeightedEdge> edges,
                                       Weight alpha, int d)
    : vertices_(std::move(vertices)), alpha_(std::move(alpha)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InputError("duplicate vertex label");
  }
  if (!vertices_.empty() && vertices_.front() < 1) throw InputError("vertex labels must be >= 1");
  init(std::move(edges), d);
}

void WeightedHypergraph::init(std::vector<WeightedEdge> edges, int d) {
  if (alpha_ < 0) throw InputError("target must be non-negative");
  if (d < 0) throw InputError("negative edge size bound");
  std::map<VertexSet, std::size_t> slot;
  std::size_t largest = 0;
  for (auto& e : edges) {
    std::sort(e.vertices.begin(), e.vertices.end());
    if (std::adjacent_find(e.vertices.begin(), e.vertices.end()) != e.vertices.end()) {
      throw InputError("vertex repeated in edge");
    }
    for (int v : e.vertices) {
      if (!has_vertex(v)) throw InputError("edge vertex " + std::to_string(v) + " out of range");
    }
    largest = std::max(largest, e.vertices.size());
    auto [it, inserted] = slot.try_emplace(e.vertices, edges_.size());
    if (inserted) {
      edges_.push_back(std::move(e));
    } else {
      edges_[it->second].weight += e.weight;
    }
  }
  d_ = std::max(d, static_cast<int>(largest));
}

bool WeightedHypergraph::has_vertex(int v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

WeightedHypergraph WeightedHypergraph::compacted() const {
  auto relabel = [this](int v) {
    return static_cast<int>(std::lower_bound(vertices_.begin(), vertices_.end(), v) -
                            vertices_.begin()) +
           1;
  };
  std::vector<WeightedEdge> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_) {
    VertexSet vs;
    for (int v : e.vertices) vs.push_back(relabel(v));
    edges.push_back({std::move(vs), e.weight});
  }
  return WeightedHypergraph(num_vertices(), std::move(edges), alpha_, d_);
}

bool operator==(const WeightedHypergraph& a, const WeightedHypergraph& b) {
  return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.alpha_ == b.alpha_ &&
         a.d_ == b.d_;
}

bool meets_target(const Weight& value, const Weight& alpha, Objective objective,
                  Comparison comparison) {
  const Weight v = objective == Objective::abs ? Weight(boost::multiprecision::abs(value)) : value;
  switch (comparison) {
    case Comparison::at_least: return v >= alpha;
    case Comparison::exact: return v == alpha;
    case Comparison::at_most: return v <= alpha;
  }
  return false;
}

namespace {

bool clause_satisfied(NormalForm kind, const Clause& clause, const Assignment& a) {
  if (kind == NormalForm::dnf) {
    return std::all_of(clause.begin(), clause.end(),
                       [&](const Literal& l) { return a(l.var) == l.positive; });
  }
  return std::any_of(clause.begin(), clause.end(),
                     [&](const Literal& l) { return a(l.var) == l.positive; });
}

}  // namespace

Weight eval_formula(const WeightedFormula& formula, const Assignment& assignment) {
  if (assignment.values.size() != static_cast<std::size_t>(formula.num_vars())) {
    throw ContractError("assignment does not cover the formula's variables");
  }
  Weight total = 0;
  for (const auto& c : formula.clauses()) {
    if (clause_satisfied(formula.kind(), c.literals, assignment)) total += c.weight;
  }
  return total;
}

Weight induced_weight(const WeightedHypergraph& graph, const VertexSet& subset) {
  VertexSet sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (int v : sorted) {
    if (!graph.has_vertex(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
  }
  Weight total = 0;
  for (const auto& e : graph.edges()) {
    if (contains(sorted, e.vertices)) total += e.weight;
  }
  return total;
}

std::vector<WeightedEdge> link(const WeightedHypergraph& graph, const VertexSet& core) {
  VertexSet sorted = core;
  std::sort(sorted.begin(), sorted.end());
  std::vector<WeightedEdge> out;
  for (const auto& e : graph.edges()) {
    if (e.vertices.size() > sorted.size() && contains(e.vertices, sorted)) out.push_back(e);
  }
  return out;
}

int degree(const WeightedHypergraph& graph, int vertex) {
  int count = 0;
  for (const auto& e : graph.edges()) {
    if (std::binary_search(e.vertices.begin(), e.vertices.end(), vertex)) ++count;
  }
  return count;
}

int max_degree(const WeightedHypergraph& graph) {
  std::map<int, int> deg;
  int best = 0;
  for (const auto& e : graph.edges()) {
    for (int v : e.vertices) best = std::max(best, ++deg[v]);
  }
  return best;
}

Weight ValueRange::max_abs() const {
  return std::max(Weight(boost::multiprecision::abs(min)), Weight(boost::multiprecision::abs(max)));
}

namespace {

void check_cap(int n, const EnumerationLimits& limits, const char* what) {
  if (n > limits.max_vars || n > detail::kMaxEnumerationBits) {
    throw BudgetError(std::string(what) + " count " + std::to_string(n) +
                      " exceeds enumeration cap " +
                      std::to_string(std::min(limits.max_vars, detail::kMaxEnumerationBits)));
  }
}

detail::MaskProblem formula_problem(const WeightedFormula& f) {
  detail::MaskProblem p;
  p.num_bits = f.num_vars();
  p.dnf = f.kind() == NormalForm::dnf;
  for (const auto& c : f.clauses()) {
    detail::MaskClause mc;
    for (const auto& l : c.literals) {
      const std::uint64_t bit = std::uint64_t{1} << (l.var - 1);
      (l.positive ? mc.pos : mc.neg) |= bit;
    }
    p.clauses.push_back(mc);
    p.weights.push_back(c.weight);
  }
  return p;
}

detail::MaskProblem hypergraph_problem(const WeightedHypergraph& g) {
  detail::MaskProblem p;
  p.num_bits = g.num_vertices();
  p.dnf = true;
  const auto& vs = g.vertices();
  for (const auto& e : g.edges()) {
    detail::MaskClause mc;
    for (int v : e.vertices) {
      const auto idx = std::lower_bound(vs.begin(), vs.end(), v) - vs.begin();
      mc.pos |= std::uint64_t{1} << idx;
    }
    p.clauses.push_back(mc);
    p.weights.push_back(e.weight);
  }
  return p;
}

}  // namespace

Verdict brute_force_formula(const WeightedFormula& formula, const EnumerationLimits& limits) {
  check_cap(formula.num_vars(), limits, "variable");
  const auto problem = formula_problem(formula);
  const auto hit = detail::first_hit(problem, formula.alpha(), formula.objective(),
                                     formula.comparison(), limits.jobs);
  Verdict v;
  if (!hit) return v;
  Assignment a;
  a.values.resize(static_cast<std::size_t>(formula.num_vars()));
  for (int i = 0; i < formula.num_vars(); ++i) a.values[static_cast<std::size_t>(i)] = (*hit >> i) & 1U;
  v.yes = true;
  v.achieved = eval_formula(formula, a);
  v.witness = std::move(a);
  return v;
}

Verdict brute_force_hypergraph(const WeightedHypergraph& graph, const EnumerationLimits& limits) {
  check_cap(graph.num_vertices(), limits, "vertex");
  const auto problem = hypergraph_problem(graph);
  const auto hit = detail::first_hit(problem, graph.alpha(), Objective::abs, Comparison::at_least,
                                     limits.jobs);
  Verdict v;
  if (!hit) return v;
  VertexSet x;
  for (int i = 0; i < graph.num_vertices(); ++i) {
    if ((*hit >> i) & 1U) x.push_back(graph.vertices()[static_cast<std::size_t>(i)]);
  }
  v.yes = true;
  v.achieved = induced_weight(graph, x);
  v.witness = std::move(x);
  return v;
}

ValueRange formula_value_range(const WeightedFormula& formula, const EnumerationLimits& limits) {
  check_cap(formula.num_vars(), limits, "variable");
  return detail::value_range(formula_problem(formula), limits.jobs);
}

ValueRange hypergraph_value_range(const WeightedHypergraph& graph,
                                  const EnumerationLimits& limits) {
  check_cap(graph.num_vertices(), limits, "vertex");
  return detail::value_range(hypergraph_problem(graph), limits.jobs);
}

}  // namespace abskernel
