#pragma once

#include <string>
#include <variant>
#include <vector>

#include "abskernel/absio.h"
#include "abskernel/kernel.h"
#include "abskernel/model.h"

namespace abskernel {

struct SolveOptions {
  KernelMode mode = KernelMode::subedge;
  EnumerationLimits limits;
  KernelConfig kernel;
};

struct SolveReport {
  Verdict verdict;
  std::vector<RuleFiring> transcript;
};

// Kernelize, then brute-force whatever is left.  Witness vertices keep the
// input labels.
SolveReport solve_unbalanced(const WeightedHypergraph& graph, const SolveOptions& options = {});

// abs / at-least DNF: monotonize, encode, solve, read the assignment off the
// witness vertex set.
SolveReport solve_abs_dnf(const WeightedFormula& formula, const SolveOptions& options = {});

// abs / at-least CNF through the truth-table conversion to DNF.
SolveReport solve_abs_cnf(const WeightedFormula& formula, const SolveOptions& options = {});

using Instance = std::variant<WeightedFormula, WeightedHypergraph, AbsIoInstance>;

struct WitnessCheck {
  bool pass = false;
  Weight achieved;
};

// Recomputes the objective and compares it with the target.  Throws
// ContractError when the witness kind does not match the instance.
WitnessCheck verify_witness(const Instance& instance, const Witness& witness);

}  // namespace abskernel
