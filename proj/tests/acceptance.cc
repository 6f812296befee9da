// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "abskernel/cli.h"
#include "abskernel/io.h"
#include "abskernel/kernel.h"
#include "abskernel/pipeline.h"
#include "abskernel/reductions.h"
#include "support.h"

using namespace abskernel;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string note;  // sample statistics, printed on success too

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

bool verifies(const WeightedHypergraph& h, const VertexSet& x) {
  return boost::multiprecision::abs(naive_induced(h, {x.begin(), x.end()})) >= h.alpha();
}

bool same_values(const WeightedFormula& a, const WeightedFormula& b) {
  if (a.num_vars() != b.num_vars()) return false;
  const int n = a.num_vars();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const auto beta = assignment_from_mask(n, m);
    if (naive_value(a, beta) != naive_value(b, beta)) return false;
  }
  return true;
}

Outcome six_vertex_example() {
  Outcome o;
  const EnumerationLimits limits{24, 1};
  const auto yes = gen_is_to_abs_monotone_dnf_np(six_vertex_graph(), 3);
  o.check(yes.num_vars() == 24 && yes.alpha() == 11, "k=3 instance shape");
  const Verdict bf = brute_force_formula(yes, limits);
  o.check(bf.yes, "brute force says no for k=3");
  o.check(formula_value_range(yes, limits).max_abs() == 11, "optimum absolute value is not 11");
  const auto piped = solve_abs_dnf(yes).verdict;
  o.check(piped.yes, "pipeline says no for k=3");
  if (piped.yes) {
    o.check(boost::multiprecision::abs(*piped.achieved) == 11, "pipeline witness value is not 11");
    o.check(verify_witness(yes, piped.witness).pass, "pipeline witness does not verify");
  }
  const auto no = gen_is_to_abs_monotone_dnf_np(six_vertex_graph(), 4);
  o.check(no.alpha() == 12, "k=4 target is not 12");
  o.check(!brute_force_formula(no, limits).yes, "brute force says yes for k=4");
  o.check(!solve_abs_dnf(no).verdict.yes, "pipeline says yes for k=4");
  return o;
}

Outcome weight_preservation() {
  Outcome o;
  Rng rng(1001);
  for (int round = 0; round < 200; ++round) {
    FormulaShape shape;
    shape.max_vars = 12;
    shape.max_clauses = 15;
    const auto dnf = random_formula(rng, NormalForm::dnf, shape);
    o.check(same_values(dnf, monotonize_abs_dnf(dnf).first), "monotonize round " + std::to_string(round));

    const auto cnf = random_formula(rng, NormalForm::cnf, shape);
    o.check(same_values(cnf, abs_cnf_to_abs_dnf(cnf).first), "cnf to dnf round " + std::to_string(round));

    FormulaShape mono = shape;
    mono.monotone = true;
    mono.min_width = 1;
    const auto conj = random_formula(rng, NormalForm::dnf, mono);
    o.check(same_values(conj, expand_conjunctions_to_disjunctions(conj).first),
            "conjunction expansion round " + std::to_string(round));
  }
  return o;
}

// Independent restatements of the size guarantees.
bool degree_bound_holds(const WeightedHypergraph& k) {
  // With no vertices left the degree rule never applies and there is nothing to bound.
  if (k.num_vertices() == 0) return true;
  const int d = std::max(1, k.d());
  const Weight delta = max_degree(k);
  return Weight(k.num_vertices()) < 2 * k.alpha() * d * d * d * delta * delta;
}

bool edge_bound_holds(const WeightedHypergraph& k) {
  const int d = std::max(1, k.d());
  const Weight base = 2 * ipow(Weight(d), static_cast<unsigned>(d)) * (Weight(1) << (1U << d)) * k.alpha();
  return Weight(k.edges().size()) < ipow(base, (1U << d) - 1);
}

struct KernelRuns {
  Outcome equivalence;
  Outcome bounds;
  Outcome idempotence;
};

KernelRuns kernel_runs() {
  KernelRuns r;
  Rng rng(1003);
  int yes = 0;
  int trivial = 0;
  int reduced = 0;
  for (int round = 0; round < 500; ++round) {
    const auto h = random_hypergraph(rng, 16, 20, 3, 5, 4);
    const bool expected = brute_force_hypergraph(h).yes;
    yes += expected;
    const std::string tag = " (round " + std::to_string(round) + ")";
    for (auto mode : {KernelMode::degree, KernelMode::subedge, KernelMode::edgecount}) {
      const auto outcome = kernelize(h, mode);
      if (outcome.trivial_yes()) {
        ++trivial;
        r.equivalence.check(expected, "trivial yes on a no-instance" + tag);
        r.equivalence.check(verifies(h, outcome.yes().witness), "trivial-yes witness fails" + tag);
        continue;
      }
      const auto& k = outcome.reduced();
      ++reduced;
      r.equivalence.check(brute_force_hypergraph(k).yes == expected,
                          "decision changed in mode " + to_string(mode) + tag);
      if (mode == KernelMode::degree) r.bounds.check(degree_bound_holds(k), "degree bound" + tag);
      if (mode == KernelMode::edgecount) r.bounds.check(edge_bound_holds(k), "edge-count bound" + tag);
      r.bounds.check(within_kernel_bound(k, mode), "library bound check" + tag);
      const auto again = kernelize(k, mode);
      r.idempotence.check(again.transcript.empty() && !again.trivial_yes() && again.reduced() == k,
                          "second kernelize changed the instance" + tag);
    }
  }
  r.equivalence.note = std::to_string(yes) + " yes / " + std::to_string(500 - yes) + " no; " +
                       std::to_string(trivial) + " trivial-yes, " + std::to_string(reduced) + " reduced outcomes";
  r.bounds.check(degree_rule_threshold(1, 2, 3) == 144, "degree threshold (1,2,3) != 144");
  r.bounds.check(edge_count_threshold(1, 2) == 2097152, "edge-count threshold (1,2) != 2097152");
  return r;
}

Outcome extraction() {
  Outcome o;
  Rng rng(1005);
  for (int round = 0; round < 100; ++round) {
    const auto h = degree_rule_instance(rng);
    const auto step = rule3_degree(h);
    o.check(step.status == KernelStep::Status::trivial_yes, "degree rule did not fire");
    o.check(verifies(h, step.witness), "packing witness fails round " + std::to_string(round));
  }
  for (int round = 0; round < 100; ++round) {
    const int core_size = round % 3;
    const auto h = subedge_rule_instance(rng, core_size);
    const auto core = find_sunflower_core(h);
    o.check(core && static_cast<int>(core->size()) == core_size, "unexpected core size");
    const auto step = rule4_subedge(h);
    o.check(step.status == KernelStep::Status::trivial_yes, "subedge rule did not fire");
    o.check(verifies(h, step.witness), "sunflower witness fails round " + std::to_string(round));
  }
  return o;
}

Outcome generators() {
  Outcome o;
  Rng rng(1006);
  for (int round = 0; round < 100; ++round) {
    const Graph g = random_graph(rng, uniform(rng, 1, 7), 0.35);
    // Each generator's clause set does not depend on k, so one enumeration
    // per generator answers every k.
    const Weight max_np = formula_value_range(gen_is_to_abs_monotone_dnf_np(g, 0), {28, 1}).max_abs();
    const Weight max_w1 = formula_value_range(gen_is_to_abs_monotone_dnf_w1(g, 0)).max_abs();
    const Weight max_signed = formula_value_range(gen_is_to_max_monotone_dnf(g, 0)).max;
    for (int k = 0; k <= 7; ++k) {
      const bool is = has_independent_set(g, k);
      const std::string tag = " (round " + std::to_string(round) + ", k=" + std::to_string(k) + ")";
      o.check((max_signed >= gen_is_to_max_monotone_dnf(g, k).alpha()) == is, "max-dnf" + tag);
      o.check((max_np >= gen_is_to_abs_monotone_dnf_np(g, k).alpha()) == is, "abs-np" + tag);
      o.check((max_w1 >= gen_is_to_abs_monotone_dnf_w1(g, k).alpha()) == is, "abs-w1" + tag);
    }
  }
  return o;
}

bool point_ok(const AbsIoInstance& inst, const Verdict& v) {
  if (!v.yes) return true;
  const auto& x = std::get<AbsIoPoint>(v.witness);
  return in_box(inst, x) && boost::multiprecision::abs(eval_poly(inst, x)) >= inst.alpha;
}

Outcome absio_end_to_end() {
  Outcome o;
  Rng rng(1007);
  int finite_yes = 0;
  for (int round = 0; round < 300; ++round) {
    const auto inst = random_absio(rng, {});
    const Verdict a = solve_absio(inst);
    finite_yes += a.yes;
    o.check(a.yes == brute_force_absio(inst).yes, "disagreement round " + std::to_string(round));
    o.check(point_ok(inst, a), "witness fails round " + std::to_string(round));
  }
  int yes = 0;
  for (int round = 0; round < 50; ++round) {
    auto inst = random_absio(rng, {});
    inst.alpha = uniform(rng, 1, 4);
    // Give x1 a monomial of its own so it cannot cancel away, then widen it.
    const unsigned e = static_cast<unsigned>(uniform(rng, 1, 2));
    std::vector<unsigned> exps(static_cast<std::size_t>(inst.num_vars), 0);
    exps[0] = e;
    std::erase_if(inst.columns, [&](const AbsIoColumn& c) { return c.exponents == exps; });
    inst.columns.push_back({exps, nonzero(rng, -5, 5)});
    const std::string tag = " (round " + std::to_string(round) + ")";
    const bool unbounded = round % 2 == 0;
    if (unbounded) {
      if (uniform(rng, 0, 1)) inst.upper[0] = ExtInt::pos_inf();
      else inst.lower[0] = ExtInt::neg_inf();
    } else {
      const int lo = uniform(rng, -6, 0);
      inst.lower[0] = lo;
      const Weight gap = 2 * inst.max_exponent(0) * inst.alpha;
      inst.upper[0] = Weight(lo + gap + uniform(rng, 0, 6));
    }
    std::vector<std::string> trace;
    const Verdict v = solve_absio(inst, {}, &trace);
    const bool branched = std::any_of(trace.begin(), trace.end(),
                                      [](const std::string& s) { return s.find("branch x") != std::string::npos; });
    o.check(branched, "branching path not taken" + tag);
    o.check(point_ok(inst, v), "branch witness fails" + tag);
    if (!unbounded) o.check(v.yes == naive_decide(inst), "wide instance disagrees with enumeration" + tag);
    yes += v.yes;
  }
  o.check(yes > 0, "no yes-instance among the branching cases");
  o.note = "finite: " + std::to_string(finite_yes) + " yes / " + std::to_string(300 - finite_yes) +
           " no; branching: " + std::to_string(yes) + " yes / " + std::to_string(50 - yes) + " no";
  return o;
}

Outcome rule6_examples() {
  Outcome o;
  AbsIoInstance sq(1, {{{2}, 1}}, 1);
  sq.lower[0] = -3;
  sq.upper[0] = 5;
  TransformLog log;
  const auto s = apply_shift(sq, 1, -3, log);
  std::map<unsigned, Weight> by_exp;
  for (const auto& c : s.columns) by_exp[c.exponents[0]] = c.weight;
  o.check(by_exp == std::map<unsigned, Weight>{{0, 9}, {1, -6}, {2, 1}}, "shift weights");
  o.check(s.lower[0] == ExtInt(0) && s.upper[0] == ExtInt(8), "shift bounds");

  AbsIoInstance cube(1, {{{3}, 2}}, 1);
  cube.lower[0] = ExtInt::neg_inf();
  cube.upper[0] = -1;
  TransformLog log2;
  const auto n = apply_negation(cube, 1, log2);
  o.check(n.columns.size() == 1 && n.columns[0].weight == -2, "negation weight");
  o.check(n.lower[0] == ExtInt(1) && n.upper[0].is_pos_inf(), "negation bounds");
  return o;
}

std::string run_cli_text(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = run_cli(args, out, err);
  return out.str() + err.str();
}

Outcome determinism(const Outcome& idempotence) {
  Outcome o = idempotence;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "abskernel_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream((dir / name).string()) << text;
    return (dir / name).string();
  };
  Rng rng(1009);
  std::vector<std::vector<std::string>> commands;
  for (int i = 0; i < 10; ++i) {
    const std::string f = write("f" + std::to_string(i) + ".wdnf",
                                serialize(random_formula(rng, NormalForm::dnf, {})));
    const std::string h = write("h" + std::to_string(i) + ".uhg",
                                serialize(random_hypergraph(rng, 12, 14, 3, 5, 4)));
    const std::string a = write("a" + std::to_string(i) + ".absio", serialize(random_absio(rng, {})));
    commands.push_back({"solve", f, "--explain"});
    commands.push_back({"solve", h, "--explain", "--mode", "degree"});
    commands.push_back({"solve", a, "--explain"});
    commands.push_back({"kernelize", h});
    commands.push_back({"reduce", f, "--to", "hypergraph"});
  }
  for (const auto& args : commands) {
    int c1 = 0;
    int c2 = 0;
    const std::string first = run_cli_text(args, c1);
    const std::string second = run_cli_text(args, c2);
    o.check(c1 == c2 && first == second, "output differs for " + args[0] + " " + args[1]);
  }
  fs::remove_all(dir);
  return o;
}

int report(int id, const std::string& name, const std::function<Outcome()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  const Outcome o = fn();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string extra = o.pass ? (o.note.empty() ? "" : " [" + o.note + "]") : ": " + o.detail;
  std::printf("%s %d %s (%.2fs)%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, extra.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  failures += report(1, "six-vertex example", six_vertex_example);
  failures += report(2, "weight preservation", weight_preservation);
  KernelRuns kernels;
  const auto kernel_start = std::chrono::steady_clock::now();
  kernels = kernel_runs();
  const double kernel_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - kernel_start).count();
  char timing[64];
  std::snprintf(timing, sizeof timing, "; shared with 4 and 9, %.2fs", kernel_secs);
  kernels.equivalence.note += timing;
  failures += report(3, "kernel equivalence", [&] { return kernels.equivalence; });
  failures += report(4, "kernel size bounds", [&] { return kernels.bounds; });
  failures += report(5, "witness extraction", extraction);
  failures += report(6, "generator equivalence", generators);
  failures += report(7, "abs-io end to end", absio_end_to_end);
  failures += report(8, "shift and negation examples", rule6_examples);
  failures += report(9, "idempotence and determinism", [&] { return determinism(kernels.idempotence); });
  return failures == 0 ? 0 : 1;
}
