#include "abskernel/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "abskernel/absio.h"
#include "abskernel/errors.h"
#include "abskernel/io.h"
#include "abskernel/kernel.h"
#include "abskernel/pipeline.h"
#include "abskernel/reductions.h"

namespace abskernel {
namespace {

constexpr const char* kVersion = "abskernel 1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

KernelMode parse_mode(const std::string& name) {
  if (name == "degree") return KernelMode::degree;
  if (name == "edgecount") return KernelMode::edgecount;
  return KernelMode::subedge;
}

std::string set_string(const VertexSet& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

struct Options {
  std::string file;
  std::string mode = "subedge";
  bool oracle = false;
  bool explain = false;
  unsigned jobs = 1;
  int max_vars = 24;
  std::string to;
  std::string output;
  std::string receipt;
  std::string graph;
  std::string generator;
  int k = 0;
  std::string witness;
};

void print_verdict(std::ostream& out, const std::string& method, const Verdict& v) {
  out << "method: " << method << '\n';
  out << "verdict: " << (v.yes ? "yes" : "no") << '\n';
  if (!v.yes) return;
  if (v.achieved) out << "achieved: " << *v.achieved << '\n';
  std::istringstream lines(serialize_witness(v.witness));
  for (std::string line; std::getline(lines, line);) out << "witness: " << line << '\n';
}

int cmd_solve(const Options& o, std::ostream& out) {
  const InstanceFile file = parse_instance(read_file(o.file));
  SolveOptions so;
  so.mode = parse_mode(o.mode);
  so.limits = EnumerationLimits{o.max_vars, o.jobs};
  std::vector<std::string> trace;
  Verdict verdict;
  std::string method;

  if (const auto* f = std::get_if<WeightedFormula>(&file.payload)) {
    const bool kernel_path = f->objective() == Objective::abs && f->comparison() == Comparison::at_least;
    if (o.oracle || !kernel_path) {
      method = kernel_path ? "oracle" : "oracle (only brute force is offered for this objective)";
      verdict = brute_force_formula(*f, so.limits);
    } else {
      method = "kernel/" + to_string(so.mode);
      SolveReport r = f->kind() == NormalForm::dnf ? solve_abs_dnf(*f, so) : solve_abs_cnf(*f, so);
      verdict = std::move(r.verdict);
      for (const auto& firing : r.transcript) trace.push_back(to_string(firing));
    }
  } else if (const auto* h = std::get_if<WeightedHypergraph>(&file.payload)) {
    if (o.oracle) {
      method = "oracle";
      verdict = brute_force_hypergraph(*h, so.limits);
    } else {
      method = "kernel/" + to_string(so.mode);
      SolveReport r = solve_unbalanced(*h, so);
      verdict = std::move(r.verdict);
      for (const auto& firing : r.transcript) trace.push_back(to_string(firing));
    }
  } else if (const auto* a = std::get_if<AbsIoInstance>(&file.payload)) {
    if (o.oracle) {
      method = "oracle";
      verdict = brute_force_absio(*a);
    } else {
      method = "search-tree";
      verdict = solve_absio(*a, {}, &trace);
    }
  } else {
    throw InputError("graph files cannot be solved; use 'generate' first");
  }

  print_verdict(out, method, verdict);
  if (o.explain) {
    for (const auto& line : trace) out << "explain: " << line << '\n';
  }
  return verdict.yes ? kExitYes : kExitNo;
}

std::string receipt_text(const ReductionReceipt& r) {
  std::ostringstream out;
  out << "receipt " << r.source_kind << " -> " << r.target_kind << '\n';
  out << "vars " << r.num_vars << " identity\n";
  for (std::size_t i = 0; i < r.sources.size(); ++i) {
    out << "out " << i << " <-";
    for (std::size_t s : r.sources[i]) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const InstanceFile file = parse_instance(read_file(o.file));
  const auto* f = std::get_if<WeightedFormula>(&file.payload);
  if (!f) throw InputError("reduce expects a wdnf or wcnf file");
  std::string text;
  std::optional<ReductionReceipt> receipt;
  if (o.to == "monotone-dnf") {
    auto [g, r] = monotonize_abs_dnf(*f);
    text = serialize(g);
    receipt = std::move(r);
  } else if (o.to == "dnf") {
    auto [g, r] = abs_cnf_to_abs_dnf(*f);
    text = serialize(g);
    receipt = std::move(r);
  } else if (o.to == "hypergraph") {
    auto [g, r] = encode_dnf_as_hypergraph(*f);
    text = serialize(g);
    receipt = std::move(r);
  } else if (o.to == "cnf-expansion") {
    auto [g, r] = expand_conjunctions_to_disjunctions(*f);
    text = serialize(g);
    receipt = std::move(r);
  } else if (o.to == "exact") {
    text = serialize(gen_exact_variant(*f, f->alpha()));
  } else {
    text = serialize(gen_min_variant(*f, f->alpha()));
  }
  if (o.output.empty()) {
    out << text;
  } else {
    write_file(o.output, text);
  }
  if (receipt) {
    const std::string path =
        !o.receipt.empty() ? o.receipt : (o.output.empty() ? std::string() : o.output + ".receipt");
    if (path.empty()) out << "c " << receipt->source_kind << " -> " << receipt->target_kind << '\n';
    else write_file(path, receipt_text(*receipt));
  }
  return 0;
}

int cmd_kernelize(const Options& o, std::ostream& out) {
  const InstanceFile file = parse_instance(read_file(o.file));
  const auto* h = std::get_if<WeightedHypergraph>(&file.payload);
  if (!h) throw InputError("kernelize expects a uhg file");
  const KernelMode mode = parse_mode(o.mode);
  const int d = std::max(1, h->d());
  out << "mode: " << to_string(mode) << '\n';
  out << "input: |V|=" << h->num_vertices() << " |E|=" << h->edges().size()
      << " Delta=" << max_degree(*h) << " d=" << h->d() << " alpha=" << h->alpha() << '\n';
  for (int i = 0; i <= d; ++i) {
    out << "g(" << i << "): ";
    try {
      out << g_threshold(i, h->alpha(), d) << '\n';
    } catch (const BudgetError&) {
      out << "too large to print\n";
    }
  }
  out << "degree threshold: " << degree_rule_threshold(h->alpha(), d, max_degree(*h)) << '\n';
  out << "edge-count threshold: ";
  try {
    out << edge_count_threshold(h->alpha(), d) << '\n';
  } catch (const BudgetError&) {
    out << "too large to print\n";
  }

  const KernelOutcome outcome = kernelize(*h, mode);
  for (const auto& firing : outcome.transcript) out << "firing: " << to_string(firing) << '\n';
  if (outcome.trivial_yes()) {
    out << "TRIVIAL-YES witness " << set_string(outcome.yes().witness) << " achieved "
        << outcome.yes().achieved << '\n';
    return 0;
  }
  const WeightedHypergraph& k = outcome.reduced();
  out << "kernel: |V|=" << k.num_vertices() << " |E|=" << k.edges().size()
      << " within-bound=" << (within_kernel_bound(k, mode) ? "yes" : "no") << '\n';
  out << "kernel labels: " << set_string(k.vertices()) << '\n';
  if (!o.output.empty()) write_file(o.output, serialize(k));
  else out << serialize(k);
  return 0;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const InstanceFile file = parse_instance(read_file(o.graph));
  const auto* g = std::get_if<Graph>(&file.payload);
  if (!g) throw InputError("--graph expects an edge file");
  WeightedFormula f;
  if (o.generator == "max-dnf") f = gen_is_to_max_monotone_dnf(*g, o.k);
  else if (o.generator == "abs-np") f = gen_is_to_abs_monotone_dnf_np(*g, o.k);
  else f = gen_is_to_abs_monotone_dnf_w1(*g, o.k);
  if (o.output.empty()) out << serialize(f);
  else write_file(o.output, serialize(f));
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const InstanceFile file = parse_instance(read_file(o.file));
  const Witness w = parse_witness(read_file(o.witness), file.payload);
  Instance inst = std::visit(
      [](const auto& p) -> Instance {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Graph>) {
          throw InputError("graph files have no witness");
        } else {
          return p;
        }
      },
      file.payload);
  const WitnessCheck check = verify_witness(inst, w);
  out << (check.pass ? "pass" : "fail") << " achieved " << check.achieved << '\n';
  return check.pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted formula / hypergraph kernelization toolkit", "abskernel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  const std::vector<std::string> modes{"degree", "subedge", "edgecount"};

  auto* solve = app.add_subcommand("solve", "Decide an instance and print a witness");
  solve->add_option("file", o.file)->required();
  solve->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
  solve->add_flag("--oracle", o.oracle, "Brute force only");
  solve->add_flag("--explain", o.explain, "Print the kernel or search-tree transcript");
  solve->add_option("--jobs", o.jobs, "Worker threads for enumeration")->check(CLI::Range(1U, 256U));
  solve->add_option("--max-vars", o.max_vars, "Enumeration cap in variables")->check(CLI::Range(0, 62));

  auto* reduce = app.add_subcommand("reduce", "Apply one reduction");
  reduce->add_option("file", o.file)->required();
  reduce->add_option("--to", o.to)
      ->required()
      ->check(CLI::IsMember({"monotone-dnf", "dnf", "hypergraph", "cnf-expansion", "exact", "min"}));
  reduce->add_option("-o,--output", o.output);
  reduce->add_option("--receipt", o.receipt);

  auto* kern = app.add_subcommand("kernelize", "Run the reduction rules");
  kern->add_option("file", o.file)->required();
  kern->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
  kern->add_option("-o,--output", o.output);

  auto* gen = app.add_subcommand("generate", "Independent set constructions");
  gen->add_option("generator", o.generator)
      ->required()
      ->check(CLI::IsMember({"max-dnf", "abs-np", "abs-w1"}));
  gen->add_option("--graph", o.graph)->required();
  gen->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("-o,--output", o.output);

  auto* verify = app.add_subcommand("verify", "Check a witness file");
  verify->add_option("file", o.file)->required();
  verify->add_option("--witness", o.witness)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (kern->parsed()) return cmd_kernelize(o, out);
    if (gen->parsed()) return cmd_generate(o, out);
    return cmd_verify(o, out);
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace abskernel
