#include "abskernel/pipeline.h"

#include <algorithm>

#include "abskernel/errors.h"
#include "abskernel/reductions.h"

namespace abskernel {

SolveReport solve_unbalanced(const WeightedHypergraph& graph, const SolveOptions& options) {
  SolveReport report;
  KernelOutcome outcome = kernelize(graph, options.mode, options.kernel);
  report.transcript = std::move(outcome.transcript);
  if (outcome.trivial_yes()) {
    const TrivialYes& yes = outcome.yes();
    report.verdict = Verdict{true, yes.witness, yes.achieved};
    return report;
  }
  // Brute force on relabelled vertices, then map back.
  const WeightedHypergraph& reduced = outcome.reduced();
  const Verdict inner = brute_force_hypergraph(reduced.compacted(), options.limits);
  if (!inner.yes) return report;
  VertexSet x;
  for (int v : std::get<VertexSet>(inner.witness)) {
    x.push_back(reduced.vertices()[static_cast<std::size_t>(v - 1)]);
  }
  Weight achieved = induced_weight(graph, x);
  if (!meets_target(achieved, graph.alpha(), Objective::abs, Comparison::at_least)) {
    throw InternalError("lifted hypergraph witness does not verify");
  }
  report.verdict = Verdict{true, std::move(x), std::move(achieved)};
  return report;
}

SolveReport solve_abs_dnf(const WeightedFormula& formula, const SolveOptions& options) {
  if (formula.kind() != NormalForm::dnf || formula.objective() != Objective::abs ||
      formula.comparison() != Comparison::at_least) {
    throw ContractError("solve_abs_dnf needs an abs / at-least DNF");
  }
  const auto [monotone, receipt1] = monotonize_abs_dnf(formula);
  const auto [graph, receipt2] = encode_dnf_as_hypergraph(monotone);
  // Both steps keep the variable set, so vertex v is variable v.
  if (graph.num_vertices() != formula.num_vars()) {
    throw InternalError("reduction chain changed the variable set");
  }
  SolveReport report = solve_unbalanced(graph, options);
  if (!report.verdict.yes) return report;
  Assignment beta{std::vector<bool>(static_cast<std::size_t>(formula.num_vars()), false)};
  for (int v : std::get<VertexSet>(report.verdict.witness)) {
    beta.values[static_cast<std::size_t>(v - 1)] = true;
  }
  Weight achieved = eval_formula(formula, beta);
  if (!meets_target(achieved, formula.alpha(), Objective::abs, Comparison::at_least)) {
    throw InternalError("lifted assignment does not verify");
  }
  report.verdict = Verdict{true, std::move(beta), std::move(achieved)};
  return report;
}

SolveReport solve_abs_cnf(const WeightedFormula& formula, const SolveOptions& options) {
  if (formula.kind() != NormalForm::cnf || formula.objective() != Objective::abs ||
      formula.comparison() != Comparison::at_least) {
    throw ContractError("solve_abs_cnf needs an abs / at-least CNF");
  }
  const auto [dnf, receipt] = abs_cnf_to_abs_dnf(formula);
  SolveReport report = solve_abs_dnf(dnf, options);
  if (report.verdict.yes) {
    const Weight achieved = eval_formula(formula, std::get<Assignment>(report.verdict.witness));
    if (achieved != *report.verdict.achieved) {
      throw InternalError("CNF and DNF disagree on the lifted assignment");
    }
  }
  return report;
}

WitnessCheck verify_witness(const Instance& instance, const Witness& witness) {
  return std::visit(
      [&](const auto& inst) -> WitnessCheck {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, WeightedFormula>) {
          const auto* beta = std::get_if<Assignment>(&witness);
          if (!beta) throw ContractError("formula instances need an assignment witness");
          if (beta->values.size() != static_cast<std::size_t>(inst.num_vars())) {
            throw ContractError("assignment length does not match the formula");
          }
          Weight v = eval_formula(inst, *beta);
          const bool pass = meets_target(v, inst.alpha(), inst.objective(), inst.comparison());
          return {pass, std::move(v)};
        } else if constexpr (std::is_same_v<T, WeightedHypergraph>) {
          const auto* x = std::get_if<VertexSet>(&witness);
          if (!x) throw ContractError("hypergraph instances need a vertex set witness");
          Weight v = induced_weight(inst, *x);
          const bool pass = meets_target(v, inst.alpha(), Objective::abs, Comparison::at_least);
          return {pass, std::move(v)};
        } else {
          const auto* x = std::get_if<AbsIoPoint>(&witness);
          if (!x) throw ContractError("absio instances need a point witness");
          if (x->size() != static_cast<std::size_t>(inst.num_vars)) {
            throw ContractError("point dimension does not match the instance");
          }
          Weight v = eval_poly(inst, *x);
          bool pass = boost::multiprecision::abs(v) >= inst.alpha;
          for (std::size_t i = 0; i < x->size(); ++i) {
            pass = pass && ExtInt((*x)[i]) >= inst.lower[i] && ExtInt((*x)[i]) <= inst.upper[i];
          }
          return {pass, std::move(v)};
        }
      },
      instance);
}

}  // namespace abskernel
