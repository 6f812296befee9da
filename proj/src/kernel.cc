#include "abskernel/kernel.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "abskernel/errors.h"

namespace abskernel {
namespace {

int effective_d(const WeightedHypergraph& graph) { return std::max(1, graph.d()); }

std::string set_string(const VertexSet& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vs[i]);
  }
  return s + "}";
}

// count >= g(i) without materialising astronomically large thresholds.
bool reaches_g(std::uint64_t count, int i, const Weight& alpha, int d, const KernelConfig& config) {
  if (config.g_override) {
    const auto& table = *config.g_override;
    if (i < 0 || static_cast<std::size_t>(i) >= table.size()) {
      throw ContractError("g override table has no entry for i = " + std::to_string(i));
    }
    return Weight(count) >= table[static_cast<std::size_t>(i)];
  }
  if (i == 0) return count >= 1;
  if (alpha == 0) return true;
  // g(i) >= 2^((2^d + 1)(2^i - 1)) and count < 2^64.
  if (d >= 6 || i >= 6) return false;
  if (((1 << d) + 1) * ((1 << i) - 1) >= 64) return false;
  return Weight(count) >= g_threshold(i, alpha, d);
}

Weight abs_value(const Weight& w) { return boost::multiprecision::abs(w); }

void verify_or_throw(const WeightedHypergraph& graph, const VertexSet& x, const char* what) {
  if (abs_value(induced_weight(graph, x)) < graph.alpha()) {
    throw InternalError(std::string(what) + " produced a witness that does not verify");
  }
}

KernelStep trivial(const WeightedHypergraph& graph, VertexSet witness, RuleId rule,
                   std::string detail) {
  KernelStep step;
  step.status = KernelStep::Status::trivial_yes;
  step.instance = graph;
  step.witness = std::move(witness);
  step.firings.push_back({rule, std::move(detail)});
  return step;
}

KernelStep unchanged(const WeightedHypergraph& graph) {
  KernelStep step;
  step.instance = graph;
  return step;
}

std::vector<VertexSet> sorted_nonempty_edges(const WeightedHypergraph& graph) {
  std::vector<VertexSet> out;
  for (const auto& e : graph.edges()) {
    if (!e.vertices.empty()) out.push_back(e.vertices);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Weight edge_weight(const WeightedHypergraph& graph, const VertexSet& vs) {
  for (const auto& e : graph.edges()) {
    if (e.vertices == vs) return e.weight;
  }
  return 0;
}

VertexSet set_union_of(const std::vector<VertexSet>& sets) {
  std::set<int> all;
  for (const auto& s : sets) all.insert(s.begin(), s.end());
  return {all.begin(), all.end()};
}

VertexSet minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet merged(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Weight g_threshold(int i, const Weight& alpha, int d) {
  if (i < 0 || d < 1 || i > d) throw ContractError("g(i) needs 0 <= i <= d and d >= 1");
  if (alpha < 0) throw ContractError("alpha must be non-negative");
  if (i == 0) return 1;
  if (d > 24) throw BudgetError("g(i) for d = " + std::to_string(d) + " is too large to materialise");
  const Weight base = ipow(Weight(i), static_cast<unsigned>(i)) * 2 * alpha *
                      ipow(Weight(2), 1U << d);
  const std::size_t exponent = (std::size_t{1} << i) - 1;
  if (bit_length(base) * exponent > (std::size_t{1} << 26)) {
    throw BudgetError("g(" + std::to_string(i) + ") exceeds the materialisation budget");
  }
  return ipow(base, static_cast<unsigned>(exponent));
}

Weight degree_rule_threshold(const Weight& alpha, int d, int max_deg) {
  return 2 * alpha * ipow(Weight(d), 3) * ipow(Weight(max_deg), 2);
}

Weight edge_count_threshold(const Weight& alpha, int d) { return g_threshold(d, alpha, d); }

std::string to_string(KernelMode mode) {
  switch (mode) {
    case KernelMode::degree: return "degree";
    case KernelMode::subedge: return "subedge";
    case KernelMode::edgecount: return "edgecount";
  }
  return "?";
}

std::string to_string(const RuleFiring& firing) {
  switch (firing.rule) {
    case RuleId::isolated_vertex: return "rule1 " + firing.detail;
    case RuleId::zero_weight_edge: return "rule2 " + firing.detail;
    case RuleId::degree: return "rule3 " + firing.detail;
    case RuleId::subedge: return "rule4 " + firing.detail;
    case RuleId::edge_count: return "edgecount " + firing.detail;
  }
  return firing.detail;
}

KernelStep rule1_isolated(const WeightedHypergraph& graph) {
  std::set<int> covered;
  for (const auto& e : graph.edges()) covered.insert(e.vertices.begin(), e.vertices.end());
  VertexSet keep;
  KernelStep step;
  for (int v : graph.vertices()) {
    if (covered.count(v)) keep.push_back(v);
    else step.firings.push_back({RuleId::isolated_vertex, "delete-vertex " + std::to_string(v)});
  }
  if (step.firings.empty()) return unchanged(graph);
  step.status = KernelStep::Status::reduced;
  step.instance = WeightedHypergraph(std::move(keep), graph.edges(), graph.alpha(), graph.d());
  return step;
}

KernelStep rule2_zero_weight(const WeightedHypergraph& graph) {
  std::vector<WeightedEdge> keep;
  KernelStep step;
  for (const auto& e : graph.edges()) {
    if (e.weight != 0) keep.push_back(e);
    else step.firings.push_back({RuleId::zero_weight_edge, "delete-edge " + set_string(e.vertices)});
  }
  if (step.firings.empty()) return unchanged(graph);
  step.status = KernelStep::Status::reduced;
  step.instance = WeightedHypergraph(graph.vertices(), std::move(keep), graph.alpha(), graph.d());
  return step;
}

KernelStep rule3_degree(const WeightedHypergraph& graph) {
  if (graph.alpha() == 0) return trivial(graph, {}, RuleId::degree, "trivial-yes alpha=0");
  if (graph.num_vertices() == 0) return unchanged(graph);
  const int delta = max_degree(graph);
  const Weight threshold = degree_rule_threshold(graph.alpha(), effective_d(graph), delta);
  if (Weight(graph.num_vertices()) < threshold) return unchanged(graph);
  VertexSet x = extract_witness_packing(graph);
  verify_or_throw(graph, x, "degree rule");
  return trivial(graph, std::move(x), RuleId::degree,
                 "trivial-yes |V|=" + std::to_string(graph.num_vertices()) +
                     " threshold=" + to_string(threshold));
}

VertexSet extract_witness_packing(const WeightedHypergraph& graph) {
  const auto edges = sorted_nonempty_edges(graph);
  std::unordered_map<int, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (int v : edges[i]) incident[v].push_back(i);
  }
  std::vector<char> removed(edges.size(), 0);
  std::vector<VertexSet> plus;
  std::vector<VertexSet> minus_side;

  auto has_remaining_proper_subedge = [&](std::size_t i) {
    for (std::size_t j : incident[edges[i].front()]) {
      (void)j;
    }
    for (int v : edges[i]) {
      for (std::size_t j : incident[v]) {
        if (!removed[j] && edges[j].size() < edges[i].size() && contains(edges[i], edges[j])) {
          return true;
        }
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < edges.size(); ++i) {
    // Edges before i are removed or were rejected as non-minimal; a rejected
    // edge stays non-minimal only while its subedge remains, so rescan.
    if (removed[i] || has_remaining_proper_subedge(i)) continue;
    const VertexSet& e = edges[i];
    const Weight w = edge_weight(graph, e);
    if (w > 0) plus.push_back(e);
    else if (w < 0) minus_side.push_back(e);
    // E_e: edges meeting e; V_e: their vertices; drop every edge touching V_e.
    std::set<int> covered;
    for (int v : e) {
      for (std::size_t j : incident[v]) {
        if (!removed[j]) covered.insert(edges[j].begin(), edges[j].end());
      }
    }
    for (int v : covered) {
      for (std::size_t j : incident[v]) removed[j] = 1;
    }
    i = static_cast<std::size_t>(-1);  // restart: earlier rejected edges may now be minimal
  }

  const bool plus_first = plus.size() >= minus_side.size();
  const VertexSet first = set_union_of(plus_first ? plus : minus_side);
  const VertexSet second = set_union_of(plus_first ? minus_side : plus);
  for (const auto* x : {&first, &second}) {
    if (abs_value(induced_weight(graph, *x)) >= graph.alpha()) return *x;
  }
  throw InternalError("set packing extraction found no verifying side (|M+|=" +
                      std::to_string(plus.size()) + ", |M-|=" + std::to_string(minus_side.size()) +
                      ")");
}

std::optional<VertexSet> find_sunflower_core(const WeightedHypergraph& graph,
                                             const KernelConfig& config) {
  const int d = effective_d(graph);
  std::uint64_t edge_total = 0;
  for (const auto& e : graph.edges()) edge_total += e.vertices.empty() ? 0 : 1;
  // Core sizes s (i = d - s) whose threshold is reachable at all.
  std::vector<char> reachable(static_cast<std::size_t>(d), 0);
  bool any = false;
  for (int s = 0; s < d; ++s) {
    reachable[static_cast<std::size_t>(s)] = reaches_g(edge_total, d - s, graph.alpha(), d, config);
    any = any || reachable[static_cast<std::size_t>(s)];
  }
  if (!any) return std::nullopt;

  std::map<VertexSet, std::uint64_t> link_size;
  for (const auto& e : graph.edges()) {
    const std::size_t t = e.vertices.size();
    if (t == 0) continue;
    if (t > 24) throw BudgetError("edge too large for subedge enumeration");
    for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << t); ++m) {
      const int s = std::popcount(m);
      if (s >= d || !reachable[static_cast<std::size_t>(s)]) continue;
      VertexSet c;
      for (std::size_t j = 0; j < t; ++j) {
        if ((m >> j) & 1U) c.push_back(e.vertices[j]);
      }
      ++link_size[c];
    }
  }
  std::vector<std::pair<VertexSet, std::uint64_t>> candidates(link_size.begin(), link_size.end());
  // Largest cores first; the first one meeting (i) has no superset meeting
  // (i), which is condition (ii).
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  for (const auto& [core, count] : candidates) {
    const int i = d - static_cast<int>(core.size());
    if (reaches_g(count, i, graph.alpha(), d, config)) return core;
  }
  return std::nullopt;
}

VertexSet extract_witness_sunflower(const WeightedHypergraph& graph, const VertexSet& core) {
  std::vector<std::pair<VertexSet, Weight>> link_edges;  // (petal, weight)
  for (const auto& e : link(graph, core)) link_edges.push_back({minus(e.vertices, core), e.weight});
  std::sort(link_edges.begin(), link_edges.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::unordered_map<int, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < link_edges.size(); ++i) {
    for (int v : link_edges[i].first) incident[v].push_back(i);
  }
  std::unordered_set<int> petals;  // union of chosen petals
  std::vector<char> chosen(link_edges.size(), 0);
  std::vector<VertexSet> plus;
  std::vector<VertexSet> minus_side;

  for (std::size_t i = 0; i < link_edges.size(); ++i) {
    const VertexSet& petal = link_edges[i].first;
    // Pairwise intersection exactly the core: petals are disjoint.
    if (std::any_of(petal.begin(), petal.end(), [&](int v) { return petals.count(v) > 0; })) {
      continue;
    }
    // Self-induction in the link: no unchosen link edge may fit inside the
    // enlarged union.  Only edges meeting the new petal can newly fit.
    bool ok = true;
    for (int v : petal) {
      for (std::size_t j : incident[v]) {
        if (j == i || chosen[j]) continue;
        const bool inside = std::all_of(link_edges[j].first.begin(), link_edges[j].first.end(),
                                        [&](int u) {
                                          return petals.count(u) > 0 ||
                                                 std::binary_search(petal.begin(), petal.end(), u);
                                        });
        if (inside) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) continue;
    chosen[i] = 1;
    petals.insert(petal.begin(), petal.end());
    if (link_edges[i].second > 0) plus.push_back(petal);
    else if (link_edges[i].second < 0) minus_side.push_back(petal);
  }

  const VertexSet plus_petals = set_union_of(plus);
  const VertexSet minus_petals = set_union_of(minus_side);
  const std::size_t k = core.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    VertexSet sub;
    for (std::size_t j = 0; j < k; ++j) {
      if ((m >> j) & 1U) sub.push_back(core[j]);
    }
    for (const auto* s : {static_cast<const VertexSet*>(nullptr), &plus_petals, &minus_petals}) {
      VertexSet x = s ? merged(sub, *s) : sub;
      if (abs_value(induced_weight(graph, x)) >= graph.alpha()) return x;
    }
  }
  throw InternalError("sunflower extraction on core " + set_string(core) +
                      " found no verifying candidate (|M+|=" + std::to_string(plus.size()) +
                      ", |M-|=" + std::to_string(minus_side.size()) + ")");
}

KernelStep rule4_subedge(const WeightedHypergraph& graph, const KernelConfig& config) {
  if (graph.alpha() == 0) return trivial(graph, {}, RuleId::subedge, "trivial-yes alpha=0");
  const auto core = find_sunflower_core(graph, config);
  if (!core) return unchanged(graph);
  VertexSet x = extract_witness_sunflower(graph, *core);
  verify_or_throw(graph, x, "subedge rule");
  return trivial(graph, std::move(x), RuleId::subedge,
                 "trivial-yes core " + set_string(*core) + " link=" +
                     std::to_string(link(graph, *core).size()));
}

KernelStep edge_count_shortcut(const WeightedHypergraph& graph, const KernelConfig& config) {
  if (graph.alpha() == 0) return trivial(graph, {}, RuleId::edge_count, "trivial-yes alpha=0");
  const int d = effective_d(graph);
  const auto edges = static_cast<std::uint64_t>(graph.edges().size());
  if (!reaches_g(edges, d, graph.alpha(), d, config)) return unchanged(graph);
  const VertexSet core = find_sunflower_core(graph, config).value_or(VertexSet{});
  VertexSet x = extract_witness_sunflower(graph, core);
  verify_or_throw(graph, x, "edge-count shortcut");
  return trivial(graph, std::move(x), RuleId::edge_count,
                 "trivial-yes |E|=" + std::to_string(edges) + " core " + set_string(core));
}

KernelOutcome kernelize(const WeightedHypergraph& graph, KernelMode mode,
                        const KernelConfig& config) {
  KernelOutcome out;
  auto finish_yes = [&](KernelStep step) {
    out.transcript.insert(out.transcript.end(), step.firings.begin(), step.firings.end());
    const Weight achieved = induced_weight(graph, step.witness);
    out.result = TrivialYes{std::move(step.witness), achieved};
    return out;
  };

  if (graph.alpha() == 0) {
    const RuleId rule = mode == KernelMode::degree    ? RuleId::degree
                        : mode == KernelMode::subedge ? RuleId::subedge
                                                      : RuleId::edge_count;
    return finish_yes(trivial(graph, {}, rule, "trivial-yes alpha=0"));
  }

  WeightedHypergraph current = graph;
  while (true) {
    if (auto s = rule1_isolated(current); s.status == KernelStep::Status::reduced) {
      out.transcript.insert(out.transcript.end(), s.firings.begin(), s.firings.end());
      current = std::move(s.instance);
      continue;
    }
    if (auto s = rule2_zero_weight(current); s.status == KernelStep::Status::reduced) {
      out.transcript.insert(out.transcript.end(), s.firings.begin(), s.firings.end());
      current = std::move(s.instance);
      continue;
    }
    break;
  }
  if (mode == KernelMode::degree || mode == KernelMode::subedge) {
    if (auto s = rule3_degree(current); s.status == KernelStep::Status::trivial_yes) {
      return finish_yes(std::move(s));
    }
  }
  if (mode == KernelMode::subedge) {
    if (auto s = rule4_subedge(current, config); s.status == KernelStep::Status::trivial_yes) {
      return finish_yes(std::move(s));
    }
  }
  if (mode == KernelMode::edgecount) {
    if (auto s = edge_count_shortcut(current, config); s.status == KernelStep::Status::trivial_yes) {
      return finish_yes(std::move(s));
    }
  }
  out.result = std::move(current);
  return out;
}

bool within_kernel_bound(const WeightedHypergraph& reduced, KernelMode mode,
                         const KernelConfig& config) {
  const int d = effective_d(reduced);
  const auto edges = static_cast<std::uint64_t>(reduced.edges().size());
  switch (mode) {
    case KernelMode::degree:
      return reduced.num_vertices() == 0 ||
             Weight(reduced.num_vertices()) <
                 degree_rule_threshold(reduced.alpha(), d, max_degree(reduced));
    case KernelMode::subedge:
      // |E| <= |link(empty)| + 1 < g(d) + 1
      return edges == 0 || !reaches_g(edges - 1, d, reduced.alpha(), d, config);
    case KernelMode::edgecount:
      return !reaches_g(edges, d, reduced.alpha(), d, config);
  }
  return false;
}

}  // namespace abskernel
