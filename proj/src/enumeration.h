#pragma once

// Incremental exhaustive enumeration over bitmask-encoded clauses, shared by
// the formula and hypergraph oracles.  Bit i stands for variable i + 1 and
// assignments are visited in counter order, so bit 0 varies fastest.

#include <cstdint>
#include <optional>
#include <vector>

#include "abskernel/model.h"

namespace abskernel::detail {

inline constexpr int kMaxEnumerationBits = 62;

struct MaskClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

struct MaskProblem {
  int num_bits = 0;
  bool dnf = true;
  std::vector<MaskClause> clauses;
  std::vector<Weight> weights;
};

std::optional<std::uint64_t> first_hit(const MaskProblem& problem, const Weight& alpha,
                                       Objective objective, Comparison comparison, unsigned jobs);

ValueRange value_range(const MaskProblem& problem, unsigned jobs);

}  // namespace abskernel::detail
