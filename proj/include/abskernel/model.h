#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "abskernel/weight.h"

namespace abskernel {

enum class NormalForm { cnf, dnf };
enum class Objective { abs, sum };
enum class Comparison { at_least, exact, at_most };

std::string to_string(NormalForm f);
std::string to_string(Objective o);
std::string to_string(Comparison c);

struct Literal {
  int var = 0;  // 1-based
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Literals sorted by variable; each variable at most once.
using Clause = std::vector<Literal>;

struct WeightedClause {
  Clause literals;
  Weight weight;
};

// CNF or DNF over integer-weighted clauses.  Construction sorts literals,
// rejects tautologies and repeated variables, and merges clauses with equal
// literal sets by summing their weights (first occurrence keeps its slot).
class WeightedFormula {
 public:
  WeightedFormula() = default;
  WeightedFormula(NormalForm kind, int num_vars, std::vector<WeightedClause> clauses,
                  Weight alpha, Objective objective = Objective::abs,
                  Comparison comparison = Comparison::at_least);

  NormalForm kind() const { return kind_; }
  int num_vars() const { return num_vars_; }
  const std::vector<WeightedClause>& clauses() const { return clauses_; }
  const Weight& alpha() const { return alpha_; }
  Objective objective() const { return objective_; }
  Comparison comparison() const { return comparison_; }

  bool monotone() const;
  int width() const;

  friend bool operator==(const WeightedFormula&, const WeightedFormula&);

 private:
  NormalForm kind_ = NormalForm::dnf;
  int num_vars_ = 0;
  std::vector<WeightedClause> clauses_;
  Weight alpha_ = 0;
  Objective objective_ = Objective::abs;
  Comparison comparison_ = Comparison::at_least;
};

bool operator==(const WeightedClause& a, const WeightedClause& b);

// Truth assignment; values[i] is the value of variable i + 1.
struct Assignment {
  std::vector<bool> values;

  bool operator()(int var) const { return values[static_cast<std::size_t>(var - 1)]; }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Sorted, duplicate-free vertex labels (labels are positive integers).
using VertexSet = std::vector<int>;

struct WeightedEdge {
  VertexSet vertices;
  Weight weight;
};

bool operator==(const WeightedEdge& a, const WeightedEdge& b);

// Weighted hypergraph over an explicit vertex label set.  Instances built
// from a count use labels 1..n; kernelization keeps the labels of surviving
// vertices, so a reduced instance can have gaps.
class WeightedHypergraph {
 public:
  WeightedHypergraph() = default;
  WeightedHypergraph(int num_vertices, std::vector<WeightedEdge> edges, Weight alpha,
                     int d = 0);
  WeightedHypergraph(VertexSet vertices, std::vector<WeightedEdge> edges, Weight alpha,
                     int d = 0);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const VertexSet& vertices() const { return vertices_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const Weight& alpha() const { return alpha_; }
  // Edge size bound; at least the largest edge, possibly declared larger.
  int d() const { return d_; }

  bool has_vertex(int v) const;
  // Vertices relabelled 1..n in ascending order; d is kept.
  WeightedHypergraph compacted() const;

  friend bool operator==(const WeightedHypergraph&, const WeightedHypergraph&);

 private:
  void init(std::vector<WeightedEdge> edges, int d);

  VertexSet vertices_;
  std::vector<WeightedEdge> edges_;
  Weight alpha_ = 0;
  int d_ = 0;
};

using AbsIoPoint = std::vector<Weight>;
using Witness = std::variant<std::monostate, Assignment, VertexSet, AbsIoPoint>;

struct Verdict {
  bool yes = false;
  Witness witness;
  std::optional<Weight> achieved;
};

// Configured caps for exhaustive enumeration.
struct EnumerationLimits {
  int max_vars = 24;
  unsigned jobs = 1;
};

// Whether `value` meets `alpha` under the objective and comparison.
bool meets_target(const Weight& value, const Weight& alpha, Objective objective,
                  Comparison comparison);

Weight eval_formula(const WeightedFormula& formula, const Assignment& assignment);
Weight induced_weight(const WeightedHypergraph& graph, const VertexSet& subset);
std::vector<WeightedEdge> link(const WeightedHypergraph& graph, const VertexSet& core);
int degree(const WeightedHypergraph& graph, int vertex);
int max_degree(const WeightedHypergraph& graph);

// Exhaustive oracles.  Enumeration lets variable 1 (vertex with the smallest
// label) vary fastest; the first assignment meeting the target is returned.
Verdict brute_force_formula(const WeightedFormula& formula, const EnumerationLimits& limits = {});
Verdict brute_force_hypergraph(const WeightedHypergraph& graph,
                               const EnumerationLimits& limits = {});

struct ValueRange {
  Weight min;
  Weight max;
  Weight max_abs() const;
};

// Minimum and maximum signed objective over all assignments / subsets.
ValueRange formula_value_range(const WeightedFormula& formula, const EnumerationLimits& limits = {});
ValueRange hypergraph_value_range(const WeightedHypergraph& graph,
                                  const EnumerationLimits& limits = {});

bool contains(std::span<const int> sorted_superset, std::span<const int> sorted_subset);

}  // namespace abskernel
