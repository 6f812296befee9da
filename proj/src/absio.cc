#include "abskernel/absio.h"

#include <algorithm>
#include <map>

#include "abskernel/errors.h"

namespace abskernel {

const Weight& ExtInt::value() const {
  if (!finite()) throw ContractError("value() of an infinite bound");
  return value_;
}

bool operator==(const ExtInt& a, const ExtInt& b) {
  if (a.inf_ != b.inf_) return false;
  return a.inf_ != 0 || a.value_ == b.value_;
}

bool operator<(const ExtInt& a, const ExtInt& b) {
  if (a.inf_ != b.inf_) return a.inf_ < b.inf_;
  return a.inf_ == 0 && a.value_ < b.value_;
}

std::string to_string(const ExtInt& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "inf";
  return to_string(v.value());
}

AbsIoInstance::AbsIoInstance(int n, std::vector<AbsIoColumn> cols, Weight a)
    : num_vars(n),
      columns(std::move(cols)),
      lower(static_cast<std::size_t>(std::max(n, 0)), ExtInt::neg_inf()),
      upper(static_cast<std::size_t>(std::max(n, 0)), ExtInt::pos_inf()),
      alpha(std::move(a)) {}

unsigned AbsIoInstance::degree() const {
  unsigned d = 0;
  for (const auto& c : columns) {
    unsigned total = 0;
    for (unsigned e : c.exponents) total += e;
    d = std::max(d, total);
  }
  return d;
}

unsigned AbsIoInstance::max_exponent(int i) const {
  unsigned e = 0;
  for (const auto& c : columns) e = std::max(e, c.exponents[static_cast<std::size_t>(i)]);
  return e;
}

void AbsIoInstance::validate() const {
  if (num_vars < 0) throw InputError("negative variable count");
  if (alpha < 0) throw InputError("target must be non-negative");
  const auto n = static_cast<std::size_t>(num_vars);
  if (lower.size() != n || upper.size() != n) throw InputError("bound vectors do not match n");
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i].is_pos_inf()) throw InputError("lower bound of x" + std::to_string(i + 1) + " is +inf");
    if (upper[i].is_neg_inf()) throw InputError("upper bound of x" + std::to_string(i + 1) + " is -inf");
  }
  for (const auto& c : columns) {
    if (c.exponents.size() != n) throw InputError("column exponent vector does not match n");
  }
}

Weight eval_poly(const AbsIoInstance& inst, const AbsIoPoint& x) {
  if (x.size() != static_cast<std::size_t>(inst.num_vars)) {
    throw ContractError("point dimension does not match the instance");
  }
  Weight total = 0;
  for (const auto& c : inst.columns) {
    Weight term = c.weight;
    for (std::size_t i = 0; i < x.size() && term != 0; ++i) {
      if (c.exponents[i] != 0) term *= ipow(x[i], c.exponents[i]);
    }
    total += term;
  }
  return total;
}

std::string to_string(const TransformEntry& entry) {
  const std::string var = "x" + std::to_string(entry.var);
  switch (entry.kind) {
    case TransformEntry::Kind::shift: return "shift " + var + " by " + to_string(entry.value);
    case TransformEntry::Kind::negate: return "negate " + var;
    case TransformEntry::Kind::fix: return "fix " + var + " = " + to_string(entry.value);
    case TransformEntry::Kind::branch:
      return "branch " + var + " k=" + to_string(entry.value) + " window [" +
             to_string(entry.window_lo) + "," + to_string(entry.window_hi) + "]";
  }
  return "?";
}

AbsIoPoint TransformLog::replay(AbsIoPoint point) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    auto& x = point.at(static_cast<std::size_t>(it->var - 1));
    switch (it->kind) {
      case TransformEntry::Kind::shift: x += it->value; break;
      case TransformEntry::Kind::negate: x = -x; break;
      case TransformEntry::Kind::fix: x = it->value; break;
      case TransformEntry::Kind::branch: break;
    }
  }
  return point;
}

namespace {

bool live(const AbsIoInstance& inst, std::size_t i) {
  return std::any_of(inst.columns.begin(), inst.columns.end(),
                     [i](const AbsIoColumn& c) { return c.exponents[i] != 0; });
}

// Rule 5.5: equal exponent vectors are merged into the first one.
bool merge_equal_columns(AbsIoInstance& inst) {
  std::map<std::vector<unsigned>, std::size_t> slot;
  std::vector<AbsIoColumn> out;
  for (auto& c : inst.columns) {
    auto [it, inserted] = slot.try_emplace(c.exponents, out.size());
    if (inserted) out.push_back(std::move(c));
    else out[it->second].weight += c.weight;
  }
  const bool changed = out.size() != inst.columns.size();
  inst.columns = std::move(out);
  return changed;
}

Weight clamp_zero(const ExtInt& lo, const ExtInt& hi) {
  if (lo > ExtInt(0)) return lo.value();
  if (hi < ExtInt(0)) return hi.value();
  return 0;
}

void log_entry(TransformLog& log, TransformEntry::Kind kind, std::size_t i, Weight value) {
  log.entries.push_back({kind, static_cast<int>(i + 1), std::move(value), {}, {}});
}

}  // namespace

SimplifyResult rule5_simplify(const AbsIoInstance& input, TransformLog& log) {
  SimplifyResult result{false, input};
  AbsIoInstance& inst = result.instance;
  const auto n = static_cast<std::size_t>(inst.num_vars);

  // First applicable subrule, then start over.
  auto step = [&]() -> bool {
    // 1: zero-weight columns
    const auto before = inst.columns.size();
    std::erase_if(inst.columns, [](const AbsIoColumn& c) { return c.weight == 0; });
    if (inst.columns.size() != before) return true;
    // 2: unused variables with a nonempty, not yet pinned domain
    for (std::size_t i = 0; i < n; ++i) {
      if (live(inst, i) || inst.upper[i] < inst.lower[i] || inst.lower[i] == inst.upper[i]) continue;
      Weight v = clamp_zero(inst.lower[i], inst.upper[i]);
      inst.lower[i] = v;
      inst.upper[i] = v;
      log_entry(log, TransformEntry::Kind::fix, i, std::move(v));
      return true;
    }
    // 3: empty domain
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.upper[i] < inst.lower[i]) {
        result.trivial_no = true;
        return false;
      }
    }
    // 4: single-value domain of a used variable
    for (std::size_t i = 0; i < n; ++i) {
      if (!(inst.lower[i] == inst.upper[i]) || !live(inst, i)) continue;
      const Weight& b = inst.lower[i].value();
      for (auto& c : inst.columns) {
        if (c.exponents[i] == 0) continue;
        c.weight *= ipow(b, c.exponents[i]);
        c.exponents[i] = 0;
      }
      log_entry(log, TransformEntry::Kind::fix, i, b);
      return true;
    }
    // 5: equal columns
    return merge_equal_columns(inst);
  };
  while (step()) {
  }
  return result;
}

AbsIoInstance apply_shift(const AbsIoInstance& inst, int row, const Weight& t, TransformLog& log) {
  const auto i = static_cast<std::size_t>(row - 1);
  AbsIoInstance out = inst;
  out.columns.clear();
  for (const auto& c : inst.columns) {
    const unsigned e = c.exponents[i];
    if (e == 0) {
      out.columns.push_back(c);
      continue;
    }
    // x^e = sum_k C(e,k) t^k y^(e-k)
    for (unsigned k = 0; k <= e; ++k) {
      AbsIoColumn nc = c;
      nc.exponents[i] = e - k;
      nc.weight = binomial(e, k) * c.weight * ipow(t, k);
      out.columns.push_back(std::move(nc));
    }
  }
  merge_equal_columns(out);
  if (out.lower[i].finite()) out.lower[i] = Weight(out.lower[i].value() - t);
  if (out.upper[i].finite()) out.upper[i] = Weight(out.upper[i].value() - t);
  log_entry(log, TransformEntry::Kind::shift, i, t);
  return out;
}

AbsIoInstance apply_negation(const AbsIoInstance& inst, int row, TransformLog& log) {
  const auto i = static_cast<std::size_t>(row - 1);
  AbsIoInstance out = inst;
  for (auto& c : out.columns) {
    if (c.exponents[i] % 2 == 1) c.weight = -c.weight;
  }
  const ExtInt lo = inst.lower[i];
  const ExtInt hi = inst.upper[i];
  out.lower[i] = hi.finite() ? ExtInt(Weight(-hi.value())) : ExtInt::neg_inf();
  out.upper[i] = lo.finite() ? ExtInt(Weight(-lo.value())) : ExtInt::pos_inf();
  log_entry(log, TransformEntry::Kind::negate, i, 0);
  return out;
}

AbsIoInstance rule6_shift(const AbsIoInstance& input, TransformLog& log) {
  AbsIoInstance inst = input;
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.num_vars); ++i) {
    if (!live(inst, i)) continue;
    const int row = static_cast<int>(i + 1);
    if (inst.lower[i].is_neg_inf() && inst.upper[i].finite() && inst.upper[i] <= ExtInt(0)) {
      inst = apply_negation(inst, row, log);
    }
    const ExtInt& lo = inst.lower[i];
    const bool has_01 = lo <= ExtInt(0) && inst.upper[i] >= ExtInt(1);
    if (lo.finite() && !has_01 && lo.value() != 0) {
      const Weight t = lo.value();
      inst = apply_shift(inst, row, t, log);
    }
  }
  return inst;
}

std::optional<AbsIoPoint> phase2_hypergraph_shortcut(const AbsIoInstance& inst,
                                                     const KernelConfig& config) {
  std::vector<WeightedEdge> edges;
  for (const auto& c : inst.columns) {
    VertexSet support;
    for (std::size_t i = 0; i < c.exponents.size(); ++i) {
      if (c.exponents[i] > 0) support.push_back(static_cast<int>(i + 1));
    }
    edges.push_back({std::move(support), c.weight});
  }
  const WeightedHypergraph graph(inst.num_vars, std::move(edges), inst.alpha,
                                 static_cast<int>(inst.degree()));
  const KernelStep step = edge_count_shortcut(graph, config);
  if (step.status != KernelStep::Status::trivial_yes) return std::nullopt;

  AbsIoPoint x(static_cast<std::size_t>(inst.num_vars), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!live(inst, i)) x[i] = clamp_zero(inst.lower[i], inst.upper[i]);
  }
  for (int v : step.witness) {
    const auto i = static_cast<std::size_t>(v - 1);
    if (live(inst, i)) x[i] = 1;
  }
  if (boost::multiprecision::abs(eval_poly(inst, x)) < inst.alpha) {
    throw InternalError("hypergraph shortcut witness does not verify as a 0/1 point");
  }
  return x;
}

std::optional<int> branch_variable(const AbsIoInstance& inst) {
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.num_vars); ++i) {
    const unsigned e = inst.max_exponent(static_cast<int>(i));
    if (e == 0) continue;
    const ExtInt& lo = inst.lower[i];
    const ExtInt& hi = inst.upper[i];
    if (!lo.finite() || !hi.finite() || hi.value() - lo.value() >= 2 * e * inst.alpha) {
      return static_cast<int>(i + 1);
    }
  }
  return std::nullopt;
}

std::vector<BranchChild> branch_children(const AbsIoInstance& inst, int var) {
  const auto i = static_cast<std::size_t>(var - 1);
  const unsigned e = inst.max_exponent(var - 1);
  std::vector<BranchChild> out;
  for (unsigned k = 0; k <= e; ++k) {
    AbsIoInstance child = inst;
    child.columns.clear();
    for (const auto& c : inst.columns) {
      if (c.exponents[i] != k) continue;
      AbsIoColumn nc = c;
      nc.exponents[i] = 0;
      child.columns.push_back(std::move(nc));
    }
    if (k > 0) child.alpha = 1;
    out.push_back({std::move(child), k});
  }
  return out;
}

std::pair<Weight, Weight> scan_window(const AbsIoInstance& inst, int var) {
  const auto i = static_cast<std::size_t>(var - 1);
  const Weight width = 2 * inst.max_exponent(var - 1) * inst.alpha;
  if (inst.lower[i].finite()) return {inst.lower[i].value(), inst.lower[i].value() + width};
  if (inst.upper[i].finite()) return {inst.upper[i].value() - width, inst.upper[i].value()};
  return {0, width};
}

AbsIoPoint witness_extend(const AbsIoInstance& inst, int var, AbsIoPoint y, unsigned k) {
  auto& x = y.at(static_cast<std::size_t>(var - 1));
  if (k == 0) {
    x = 0;
    return y;
  }
  const auto [from, to] = scan_window(inst, var);
  for (Weight z = from; z <= to; ++z) {
    x = z;
    if (boost::multiprecision::abs(eval_poly(inst, y)) >= inst.alpha) return y;
  }
  throw InternalError("no value in the scan window of x" + std::to_string(var) +
                      " reaches the target");
}

namespace {

bool within_bounds(const AbsIoInstance& inst, const AbsIoPoint& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (ExtInt(x[i]) < inst.lower[i] || ExtInt(x[i]) > inst.upper[i]) return false;
  }
  return true;
}

// Box enumeration with 64-bit arithmetic when every partial sum fits.
class BoxEvaluator {
 public:
  explicit BoxEvaluator(const AbsIoInstance& inst) {
    const auto n = static_cast<std::size_t>(inst.num_vars);
    Weight bound = 0;
    std::vector<Weight> magnitude(n);
    for (std::size_t i = 0; i < n; ++i) {
      magnitude[i] = std::max(boost::multiprecision::abs(inst.lower[i].value()),
                              boost::multiprecision::abs(inst.upper[i].value()));
      if (!to_int64(inst.lower[i].value()) || !to_int64(inst.upper[i].value())) return;
    }
    for (const auto& c : inst.columns) {
      Weight term = boost::multiprecision::abs(c.weight);
      for (std::size_t i = 0; i < n; ++i) term *= ipow(magnitude[i], c.exponents[i]);
      bound += term;
      if (bit_length(bound) > 62) return;
    }
    fast_ = true;
    for (const auto& c : inst.columns) {
      Column col{c.weight.convert_to<std::int64_t>(), {}};
      for (std::size_t i = 0; i < n; ++i) {
        if (c.exponents[i] != 0) col.factors.push_back({i, c.exponents[i]});
      }
      columns_.push_back(std::move(col));
    }
    powers_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto lo = inst.lower[i].value().convert_to<std::int64_t>();
      const auto hi = inst.upper[i].value().convert_to<std::int64_t>();
      const unsigned e = inst.max_exponent(static_cast<int>(i));
      for (std::int64_t v = lo; v <= hi; ++v) {
        std::vector<std::int64_t> p(e + 1, 1);
        for (unsigned k = 1; k <= e; ++k) p[k] = p[k - 1] * v;
        powers_[i].push_back(std::move(p));
      }
    }
  }

  bool fast() const { return fast_; }

  // offsets[i] = x_i - lower_i
  std::int64_t eval(const std::vector<std::uint64_t>& offsets) const {
    std::int64_t total = 0;
    for (const auto& c : columns_) {
      std::int64_t term = c.weight;
      for (const auto& [i, e] : c.factors) term *= powers_[i][offsets[i]][e];
      total += term;
    }
    return total;
  }

 private:
  struct Column {
    std::int64_t weight;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };

  bool fast_ = false;
  std::vector<Column> columns_;
  std::vector<std::vector<std::vector<std::int64_t>>> powers_;
};

}  // namespace

Verdict brute_force_absio(const AbsIoInstance& inst, std::uint64_t cap) {
  inst.validate();
  const auto n = static_cast<std::size_t>(inst.num_vars);
  Weight points = 1;
  std::vector<std::uint64_t> sizes(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!inst.lower[i].finite() || !inst.upper[i].finite()) {
      throw ContractError("brute force needs finite bounds (x" + std::to_string(i + 1) + ")");
    }
    if (inst.upper[i] < inst.lower[i]) return Verdict{};
    const Weight size = inst.upper[i].value() - inst.lower[i].value() + 1;
    points *= size;
    if (points > cap) {
      throw BudgetError("box has more than " + std::to_string(cap) + " points");
    }
    sizes[i] = size.convert_to<std::uint64_t>();
  }

  const BoxEvaluator fast(inst);
  const auto alpha64 = to_int64(inst.alpha);
  std::vector<std::uint64_t> offsets(n, 0);
  auto point = [&] {
    AbsIoPoint x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = inst.lower[i].value() + offsets[i];
    return x;
  };
  while (true) {
    bool hit = false;
    if (fast.fast() && alpha64) {
      const std::int64_t v = fast.eval(offsets);
      hit = (v < 0 ? -v : v) >= *alpha64;
    } else {
      hit = boost::multiprecision::abs(eval_poly(inst, point())) >= inst.alpha;
    }
    if (hit) {
      AbsIoPoint x = point();
      Weight achieved = eval_poly(inst, x);
      return Verdict{true, std::move(x), std::move(achieved)};
    }
    // Odometer, x1 fastest.
    std::size_t i = 0;
    while (i < n && ++offsets[i] == sizes[i]) offsets[i++] = 0;
    if (i == n) return Verdict{};
  }
}

namespace {

class Solver {
 public:
  Solver(const AbsIoLimits& limits, std::vector<std::string>* trace)
      : limits_(limits), trace_(trace) {}

  std::optional<AbsIoPoint> node(const AbsIoInstance& inst, int depth) {
    TransformLog log;
    AbsIoInstance work = inst;
    // Phase 1
    while (true) {
      SimplifyResult r = rule5_simplify(work, log);
      if (r.trivial_no) {
        note(depth, "trivial no: empty domain");
        return std::nullopt;
      }
      AbsIoInstance shifted = rule6_shift(r.instance, log);
      const bool stable = shifted == r.instance;
      work = std::move(shifted);
      if (stable) break;
    }
    for (const auto& e : log.entries) note(depth, to_string(e));

    if (work.alpha == 0) {
      AbsIoPoint x(static_cast<std::size_t>(work.num_vars));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = clamp_zero(work.lower[i], work.upper[i]);
      return lift(inst, log, std::move(x));
    }

    // Phase 2, root only
    if (depth == 0) {
      if (auto x = phase2_hypergraph_shortcut(work, limits_.kernel)) {
        note(depth, "hypergraph shortcut: trivial yes");
        return lift(inst, log, std::move(*x));
      }
    }

    // Phase 3
    if (const auto var = branch_variable(work)) {
      for (auto& child : branch_children(work, *var)) {
        note(depth, "branch x" + std::to_string(*var) + " k=" + std::to_string(child.k) +
                        " alpha=" + to_string(child.instance.alpha));
        if (auto y = node(child.instance, depth + 1)) {
          AbsIoPoint x = witness_extend(work, *var, std::move(*y), child.k);
          note(depth, "lift x" + std::to_string(*var) + " = " + to_string(x[static_cast<std::size_t>(*var - 1)]));
          return lift(inst, log, std::move(x));
        }
      }
      return std::nullopt;
    }

    // Phase 4
    const Verdict leaf = brute_force_absio(work, limits_.leaf_cap);
    note(depth, std::string("leaf: ") + (leaf.yes ? "yes" : "no"));
    if (!leaf.yes) return std::nullopt;
    return lift(inst, log, std::get<AbsIoPoint>(leaf.witness));
  }

 private:
  static AbsIoPoint lift(const AbsIoInstance& inst, const TransformLog& log, AbsIoPoint y) {
    AbsIoPoint x = log.replay(std::move(y));
    if (!within_bounds(inst, x)) throw InternalError("lifted point leaves the original box");
    return x;
  }

  void note(int depth, const std::string& line) {
    if (trace_) trace_->push_back(std::string(static_cast<std::size_t>(2 * depth), ' ') + line);
  }

  const AbsIoLimits& limits_;
  std::vector<std::string>* trace_;
};

}  // namespace

Verdict solve_absio(const AbsIoInstance& inst, const AbsIoLimits& limits,
                    std::vector<std::string>* trace) {
  inst.validate();
  Solver solver(limits, trace);
  auto x = solver.node(inst, 0);
  if (!x) return Verdict{};
  Weight achieved = eval_poly(inst, *x);
  if (!within_bounds(inst, *x) || boost::multiprecision::abs(achieved) < inst.alpha) {
    throw InternalError("absio witness does not verify");
  }
  return Verdict{true, std::move(*x), std::move(achieved)};
}

}  // namespace abskernel
