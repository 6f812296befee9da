#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abskernel/model.h"

namespace abskernel {

// Simple undirected graph on vertices 1..num_vertices.
class Graph {
 public:
  Graph() = default;
  // Edges are normalized to (min, max); loops and repeated edges are rejected.
  Graph(int num_vertices, std::vector<std::pair<int, int>> edges);

  int num_vertices() const { return num_vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // Neighbours of v in ascending order.
  std::vector<int> neighbours(int v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int num_vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

// Audit record of a transformation.  sources[i] lists the 0-based input
// clause indices that contributed to output clause (or edge) i.  All
// reductions here keep variable identities, so the variable map is the
// identity on 1..num_vars.
struct ReductionReceipt {
  std::string source_kind;
  std::string target_kind;
  int num_vars = 0;
  std::vector<std::vector<std::size_t>> sources;
};

enum class EliminationOrder { lowest_first, highest_first };

struct ReductionLimits {
  int max_expansion_width = 10;
};

std::pair<WeightedFormula, ReductionReceipt> monotonize_abs_dnf(
    const WeightedFormula& formula, EliminationOrder order = EliminationOrder::lowest_first);

std::pair<WeightedHypergraph, ReductionReceipt> encode_dnf_as_hypergraph(
    const WeightedFormula& formula);

std::pair<WeightedFormula, ReductionReceipt> abs_cnf_to_abs_dnf(const WeightedFormula& formula,
                                                                const ReductionLimits& limits = {});

std::pair<WeightedFormula, ReductionReceipt> expand_conjunctions_to_disjunctions(
    const WeightedFormula& formula, const ReductionLimits& limits = {});

WeightedFormula gen_is_to_max_monotone_dnf(const Graph& graph, int k);
WeightedFormula gen_is_to_abs_monotone_dnf_np(const Graph& graph, int k);
WeightedFormula gen_is_to_abs_monotone_dnf_w1(const Graph& graph, int k);

WeightedFormula gen_exact_variant(const WeightedFormula& formula, const Weight& alpha);
WeightedFormula gen_min_variant(const WeightedFormula& formula, const Weight& alpha);

}  // namespace abskernel
