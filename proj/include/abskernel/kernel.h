#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abskernel/model.h"

namespace abskernel {

// Threshold of the sunflower rule:
//   g(0) = 1,  g(i) = (i^i * 2 alpha * 2^(2^d))^(2^i - 1)  for i > 0.
Weight g_threshold(int i, const Weight& alpha, int d);

// Vertex-count trigger of the degree rule: 2 alpha d^3 Delta^2.
Weight degree_rule_threshold(const Weight& alpha, int d, int max_deg);

// Edge-count trigger: (2 d^d 2^(2^d) alpha)^(2^d - 1), which equals g(d).
Weight edge_count_threshold(const Weight& alpha, int d);

enum class KernelMode { degree, subedge, edgecount };

std::string to_string(KernelMode mode);

enum class RuleId { isolated_vertex = 1, zero_weight_edge = 2, degree = 3, subedge = 4, edge_count = 5 };

struct RuleFiring {
  RuleId rule;
  std::string detail;
};

// Human-readable transcript line, e.g. "rule1 delete-vertex 3".
std::string to_string(const RuleFiring& firing);

struct KernelConfig {
  // Test-only: replaces g(0..d) (and thereby the edge-count threshold g(d))
  // so the shortcut paths can be exercised on small instances.
  std::optional<std::vector<Weight>> g_override;
};

struct KernelStep {
  enum class Status { not_applicable, reduced, trivial_yes };

  Status status = Status::not_applicable;
  WeightedHypergraph instance;  // input unchanged unless reduced
  VertexSet witness;            // meaningful for trivial_yes
  std::vector<RuleFiring> firings;
};

KernelStep rule1_isolated(const WeightedHypergraph& graph);
KernelStep rule2_zero_weight(const WeightedHypergraph& graph);
KernelStep rule3_degree(const WeightedHypergraph& graph);
KernelStep rule4_subedge(const WeightedHypergraph& graph, const KernelConfig& config = {});
KernelStep edge_count_shortcut(const WeightedHypergraph& graph, const KernelConfig& config = {});

// Greedy self-induced set packing; returns a vertex set with |w[X]| >= alpha.
// Requires the degree-rule size condition.
VertexSet extract_witness_packing(const WeightedHypergraph& graph);

// Self-induced sunflower with the given core; returns the first verifying
// candidate c' u S, c' a subset of the core, S in {empty, petals(M+), petals(M-)}.
VertexSet extract_witness_sunflower(const WeightedHypergraph& graph, const VertexSet& core);

// The inclusion-maximal core satisfying |link(c)| >= g(d - |c|), if any.
std::optional<VertexSet> find_sunflower_core(const WeightedHypergraph& graph,
                                             const KernelConfig& config = {});

struct TrivialYes {
  VertexSet witness;
  Weight achieved;
};

struct KernelOutcome {
  // Reduced instances keep the surviving vertices' labels.
  std::variant<WeightedHypergraph, TrivialYes> result;
  std::vector<RuleFiring> transcript;

  bool trivial_yes() const { return std::holds_alternative<TrivialYes>(result); }
  const WeightedHypergraph& reduced() const { return std::get<WeightedHypergraph>(result); }
  const TrivialYes& yes() const { return std::get<TrivialYes>(result); }
};

KernelOutcome kernelize(const WeightedHypergraph& graph, KernelMode mode,
                        const KernelConfig& config = {});

// Size guarantee of a Reduced outcome in the given mode.
bool within_kernel_bound(const WeightedHypergraph& reduced, KernelMode mode,
                         const KernelConfig& config = {});

}  // namespace abskernel
