#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abskernel/kernel.h"
#include "abskernel/model.h"

namespace abskernel {

// Integer extended by -inf / +inf.  Infinite values only take part in
// comparisons, never in arithmetic.
class ExtInt {
 public:
  ExtInt() = default;
  ExtInt(Weight v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  ExtInt(int v) : value_(v) {}                // NOLINT(google-explicit-constructor)

  static ExtInt neg_inf() { return ExtInt(-1, true); }
  static ExtInt pos_inf() { return ExtInt(1, true); }

  bool finite() const { return inf_ == 0; }
  bool is_neg_inf() const { return inf_ < 0; }
  bool is_pos_inf() const { return inf_ > 0; }
  // Requires finite().
  const Weight& value() const;

  friend bool operator==(const ExtInt& a, const ExtInt& b);
  friend bool operator<(const ExtInt& a, const ExtInt& b);
  friend bool operator<=(const ExtInt& a, const ExtInt& b) { return !(b < a); }
  friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
  friend bool operator>=(const ExtInt& a, const ExtInt& b) { return !(a < b); }

 private:
  ExtInt(int sign, bool) : inf_(sign) {}

  int inf_ = 0;
  Weight value_ = 0;
};

std::string to_string(const ExtInt& v);

// One monomial w * prod_i x_i^exponents[i].
struct AbsIoColumn {
  std::vector<unsigned> exponents;  // one entry per variable
  Weight weight;

  friend bool operator==(const AbsIoColumn&, const AbsIoColumn&) = default;
};

// Decide whether some integer x with lower <= x <= upper has |p(x)| >= alpha.
// Bounds are not required to be consistent (the simplifier detects empty
// domains).
struct AbsIoInstance {
  int num_vars = 0;
  std::vector<AbsIoColumn> columns;
  std::vector<ExtInt> lower;  // finite or -inf
  std::vector<ExtInt> upper;  // finite or +inf
  Weight alpha = 0;

  AbsIoInstance() = default;
  // Unlisted bounds default to (-inf, +inf).
  AbsIoInstance(int n, std::vector<AbsIoColumn> cols, Weight alpha);

  // Maximum total degree over all columns.
  unsigned degree() const;
  // Largest exponent of variable i (0-based) in any column.
  unsigned max_exponent(int i) const;
  // Throws InputError on shape or sign violations.
  void validate() const;

  friend bool operator==(const AbsIoInstance&, const AbsIoInstance&) = default;
};

// 0^0 is 1.
Weight eval_poly(const AbsIoInstance& inst, const AbsIoPoint& x);

struct TransformEntry {
  enum class Kind { shift, negate, fix, branch };

  Kind kind;
  int var;      // 1-based, in the frame of the instance the log belongs to
  Weight value; // shift amount t, fixed value v, or the branch index k
  ExtInt window_lo;  // branch only: first scanned value
  ExtInt window_hi;  // branch only: last scanned value

  friend bool operator==(const TransformEntry&, const TransformEntry&) = default;
};

std::string to_string(const TransformEntry& entry);

// Variable changes in application order.  Rows are never renumbered: a
// removed row stays in the instance with all exponents zero and is recorded
// as fixed, so entries always refer to the caller's variable indices.
struct TransformLog {
  std::vector<TransformEntry> entries;

  // Maps a point of the transformed instance back to the original frame.
  AbsIoPoint replay(AbsIoPoint point) const;
};

struct SimplifyResult {
  bool trivial_no = false;
  AbsIoInstance instance;
};

// Simplification rules 5.1 to 5.5 applied exhaustively.  Removed variables
// keep their row (all exponents zero, bounds pinned to the fixed value).
SimplifyResult rule5_simplify(const AbsIoInstance& inst, TransformLog& log);

// x_row = y_row + t; the expanded columns are merged with equal ones.
AbsIoInstance apply_shift(const AbsIoInstance& inst, int row, const Weight& t, TransformLog& log);
// x_row = -y_row.
AbsIoInstance apply_negation(const AbsIoInstance& inst, int row, TransformLog& log);

// Shift and negation rules applied until every live domain contains {0, 1}.
// Precondition: rule5_simplify is exhausted.
AbsIoInstance rule6_shift(const AbsIoInstance& inst, TransformLog& log);

struct AbsIoLimits {
  std::uint64_t leaf_cap = 2'000'000;
  // Test-only threshold table handed to the hypergraph shortcut.
  KernelConfig kernel;
};

// Restriction to {0,1}: a yes here is a 0/1 point of the (simplified)
// instance.  nullopt when the edge-count threshold is not met.
std::optional<AbsIoPoint> phase2_hypergraph_shortcut(const AbsIoInstance& inst,
                                                     const KernelConfig& config = {});

// Lowest live variable whose domain width is at least 2 e alpha.
std::optional<int> branch_variable(const AbsIoInstance& inst);

struct BranchChild {
  AbsIoInstance instance;
  unsigned k;
};

// Children k = 0..e for the branching variable (1-based).
std::vector<BranchChild> branch_children(const AbsIoInstance& inst, int var);

// Integer window scanned when lifting a k >= 1 child.
std::pair<Weight, Weight> scan_window(const AbsIoInstance& inst, int var);

// Completes the child's point y with a value for `var`.
AbsIoPoint witness_extend(const AbsIoInstance& inst, int var, AbsIoPoint y, unsigned k);

Verdict brute_force_absio(const AbsIoInstance& inst, std::uint64_t cap = 2'000'000);

Verdict solve_absio(const AbsIoInstance& inst, const AbsIoLimits& limits = {},
                    std::vector<std::string>* trace = nullptr);

}  // namespace abskernel
