#include "abskernel/io.h"

#include <map>
#include <set>
#include <sstream>

#include "abskernel/errors.h"

namespace abskernel {

std::string to_string(FileFormat format) {
  switch (format) {
    case FileFormat::wdnf: return "wdnf";
    case FileFormat::wcnf: return "wcnf";
    case FileFormat::uhg: return "uhg";
    case FileFormat::absio: return "absio";
    case FileFormat::graph: return "edge";
  }
  return "?";
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   message);
}

// Non-empty, non-comment lines split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t from = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > from) line.tokens.push_back({raw.substr(from, i - from), from + 1});
    }
    if (!line.tokens.empty() && line.tokens[0].text != "c") out.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }
  std::size_t line() const { return line_.number; }

  const Token& next(const char* what) {
    if (done()) {
      const std::size_t col = line_.tokens.empty() ? 1 : line_.tokens.back().column +
                                                            line_.tokens.back().text.size();
      fail(line_.number, col, std::string("missing ") + what);
    }
    return line_.tokens[pos_++];
  }

  const Token& peek() const { return line_.tokens[pos_]; }

  Weight weight(const char* what) {
    const Token& t = next(what);
    try {
      return parse_weight(t.text);
    } catch (const InputError&) {
      fail(line_.number, t.column, std::string("expected integer ") + what + ", got '" +
                                       std::string(t.text) + "'");
    }
  }

  long long integer(const char* what) {
    const Token& t = next(what);
    const Weight w = [&] {
      try {
        return parse_weight(t.text);
      } catch (const InputError&) {
        fail(line_.number, t.column, std::string("expected integer ") + what + ", got '" +
                                         std::string(t.text) + "'");
      }
    }();
    const auto v = to_int64(w);
    if (!v || *v > (1LL << 30) || *v < -(1LL << 30)) {
      fail(line_.number, t.column, std::string(what) + " out of range");
    }
    return *v;
  }

  void expect_end() {
    if (!done()) fail(line_.number, peek().column, "unexpected token '" + std::string(peek().text) + "'");
  }

  [[noreturn]] void error_here(const std::string& message) const {
    fail(line_.number, pos_ > 0 ? line_.tokens[pos_ - 1].column : 1, message);
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

int count(Cursor& c, const char* what) {
  const long long v = c.integer(what);
  if (v < 0) c.error_here(std::string(what) + " must be non-negative");
  return static_cast<int>(v);
}

Weight target(Cursor& c) {
  Weight a = c.weight("alpha");
  if (a < 0) c.error_here("alpha must be non-negative");
  return a;
}

void check_count(const Line& header, std::size_t declared, std::size_t actual, const char* what) {
  if (declared != actual) {
    fail(header.number, 1, "header declares " + std::to_string(declared) + " " + what + ", found " +
                               std::to_string(actual));
  }
}

WeightedFormula parse_formula(const std::vector<Line>& lines, NormalForm kind) {
  Cursor h(lines[0]);
  h.next("p");
  h.next("format");
  const int n = count(h, "variable count");
  const int m = count(h, "clause count");
  const Weight alpha = target(h);
  Objective objective = Objective::abs;
  Comparison comparison = Comparison::at_least;
  while (!h.done()) {
    const Token& t = h.next("option");
    std::string_view word = t.text;
    if (word == "objective" || word == "cmp") word = h.next("option value").text;
    if (word == "abs") objective = Objective::abs;
    else if (word == "sum") objective = Objective::sum;
    else if (word == "atleast") comparison = Comparison::at_least;
    else if (word == "exact") comparison = Comparison::exact;
    else if (word == "atmost") comparison = Comparison::at_most;
    else h.error_here("unknown option '" + std::string(word) + "'");
  }

  std::vector<WeightedClause> clauses;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    Cursor c(lines[li]);
    if (c.next("w").text != "w") c.error_here("expected a clause line 'w <weight> <lit>... 0'");
    WeightedClause clause{{}, c.weight("weight")};
    std::set<int> seen;
    bool closed = false;
    while (!c.done()) {
      const long long lit = c.integer("literal");
      if (lit == 0) {
        closed = true;
        break;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > n) c.error_here("variable " + std::to_string(var) + " out of range 1.." + std::to_string(n));
      if (!seen.insert(static_cast<int>(var)).second) {
        c.error_here("variable " + std::to_string(var) + " repeated in clause");
      }
      clause.literals.push_back({static_cast<int>(var), lit > 0});
    }
    if (!closed) c.error_here("clause not terminated by 0");
    c.expect_end();
    clauses.push_back(std::move(clause));
  }
  check_count(lines[0], static_cast<std::size_t>(m), clauses.size(), "clauses");
  try {
    return WeightedFormula(kind, n, std::move(clauses), alpha, objective, comparison);
  } catch (const InputError& e) {
    fail(lines[0].number, 1, e.what());
  }
}

WeightedHypergraph parse_uhg(const std::vector<Line>& lines) {
  Cursor h(lines[0]);
  h.next("p");
  h.next("format");
  const int n = count(h, "vertex count");
  const int m = count(h, "edge count");
  const Weight alpha = target(h);
  int d = 0;
  if (!h.done()) {
    if (h.next("option").text != "d") h.error_here("unknown option");
    d = count(h, "d");
  }
  h.expect_end();
  std::vector<WeightedEdge> edges;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    Cursor c(lines[li]);
    if (c.next("e").text != "e") c.error_here("expected an edge line 'e <weight> <v>... 0'");
    WeightedEdge edge{{}, c.weight("weight")};
    std::set<int> seen;
    bool closed = false;
    while (!c.done()) {
      const long long v = c.integer("vertex");
      if (v == 0) {
        closed = true;
        break;
      }
      if (v < 1 || v > n) c.error_here("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      if (!seen.insert(static_cast<int>(v)).second) c.error_here("vertex repeated in edge");
      edge.vertices.push_back(static_cast<int>(v));
    }
    if (!closed) c.error_here("edge not terminated by 0");
    c.expect_end();
    edges.push_back(std::move(edge));
  }
  check_count(lines[0], static_cast<std::size_t>(m), edges.size(), "edges");
  return WeightedHypergraph(n, std::move(edges), alpha, d);
}

ExtInt bound_value(Cursor& c, std::string_view infinity, ExtInt inf_value, const char* what) {
  const Token& t = c.next(what);
  if (t.text == infinity) return inf_value;
  try {
    return ExtInt(parse_weight(t.text));
  } catch (const InputError&) {
    c.error_here(std::string("expected integer or ") + std::string(infinity) + " for " + what);
  }
}

AbsIoInstance parse_absio(const std::vector<Line>& lines) {
  Cursor h(lines[0]);
  h.next("p");
  h.next("format");
  const int n = count(h, "variable count");
  const int m = count(h, "column count");
  AbsIoInstance inst(n, {}, target(h));
  h.expect_end();
  std::vector<char> bounded(static_cast<std::size_t>(n), 0);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    Cursor c(lines[li]);
    const std::string_view kind = c.next("line kind").text;
    if (kind == "col") {
      AbsIoColumn col{std::vector<unsigned>(static_cast<std::size_t>(n), 0), c.weight("weight")};
      std::set<long long> seen;
      bool closed = false;
      while (!c.done()) {
        const Token& t = c.next("factor");
        if (t.text == "0") {
          closed = true;
          break;
        }
        const auto colon = t.text.find(':');
        if (colon == std::string_view::npos) c.error_here("expected <i>:<exp>");
        Weight index;
        Weight exp;
        try {
          index = parse_weight(t.text.substr(0, colon));
          exp = parse_weight(t.text.substr(colon + 1));
        } catch (const InputError&) {
          c.error_here("expected <i>:<exp>, got '" + std::string(t.text) + "'");
        }
        if (index < 1 || index > n) c.error_here("variable index out of range 1.." + std::to_string(n));
        if (exp < 0 || exp > 1000) c.error_here("exponent out of range 0..1000");
        const auto i = index.convert_to<long long>();
        if (!seen.insert(i).second) c.error_here("variable repeated in column");
        col.exponents[static_cast<std::size_t>(i - 1)] = exp.convert_to<unsigned>();
      }
      if (!closed) c.error_here("column not terminated by 0");
      c.expect_end();
      inst.columns.push_back(std::move(col));
    } else if (kind == "b") {
      const long long i = c.integer("variable index");
      if (i < 1 || i > n) c.error_here("variable index out of range 1.." + std::to_string(n));
      if (bounded[static_cast<std::size_t>(i - 1)]) c.error_here("bounds repeated for variable");
      bounded[static_cast<std::size_t>(i - 1)] = 1;
      inst.lower[static_cast<std::size_t>(i - 1)] = bound_value(c, "-inf", ExtInt::neg_inf(), "min");
      inst.upper[static_cast<std::size_t>(i - 1)] = bound_value(c, "inf", ExtInt::pos_inf(), "max");
      c.expect_end();
    } else {
      c.error_here("expected 'col' or 'b' line");
    }
  }
  check_count(lines[0], static_cast<std::size_t>(m), inst.columns.size(), "columns");
  return inst;
}

Graph parse_graph(const std::vector<Line>& lines) {
  Cursor h(lines[0]);
  h.next("p");
  h.next("format");
  const int n = count(h, "vertex count");
  const int m = count(h, "edge count");
  h.expect_end();
  std::vector<std::pair<int, int>> edges;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    Cursor c(lines[li]);
    if (c.next("e").text != "e") c.error_here("expected an edge line 'e <u> <v>'");
    const long long u = c.integer("vertex");
    if (u < 1 || u > n) c.error_here("vertex out of range 1.." + std::to_string(n));
    const long long v = c.integer("vertex");
    if (v < 1 || v > n) c.error_here("vertex out of range 1.." + std::to_string(n));
    c.expect_end();
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  check_count(lines[0], static_cast<std::size_t>(m), edges.size(), "edges");
  try {
    return Graph(n, std::move(edges));
  } catch (const InputError& e) {
    fail(lines[0].number, 1, e.what());
  }
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw InputError("line 1, column 1: empty instance file");
  Cursor h(lines[0]);
  if (h.next("header").text != "p") h.error_here("expected header line 'p <format> ...'");
  const std::string_view format = h.next("format").text;
  if (format == "wdnf") return {FileFormat::wdnf, parse_formula(lines, NormalForm::dnf)};
  if (format == "wcnf") return {FileFormat::wcnf, parse_formula(lines, NormalForm::cnf)};
  if (format == "uhg") return {FileFormat::uhg, parse_uhg(lines)};
  if (format == "absio") return {FileFormat::absio, parse_absio(lines)};
  if (format == "edge") return {FileFormat::graph, parse_graph(lines)};
  h.error_here("unknown format '" + std::string(format) + "'");
}

std::string serialize(const WeightedFormula& formula) {
  std::ostringstream out;
  out << "p " << (formula.kind() == NormalForm::dnf ? "wdnf" : "wcnf") << ' ' << formula.num_vars()
      << ' ' << formula.clauses().size() << ' ' << formula.alpha();
  if (formula.objective() != Objective::abs) out << " objective sum";
  if (formula.comparison() == Comparison::exact) out << " cmp exact";
  if (formula.comparison() == Comparison::at_most) out << " cmp atmost";
  out << '\n';
  for (const auto& c : formula.clauses()) {
    out << "w " << c.weight;
    for (const auto& l : c.literals) out << ' ' << (l.positive ? l.var : -l.var);
    out << " 0\n";
  }
  return out.str();
}

std::string serialize(const WeightedHypergraph& graph) {
  if (!graph.vertices().empty() && graph.vertices().back() != graph.num_vertices()) {
    return serialize(graph.compacted());
  }
  std::ostringstream out;
  out << "p uhg " << graph.num_vertices() << ' ' << graph.edges().size() << ' ' << graph.alpha();
  int largest = 0;
  for (const auto& e : graph.edges()) largest = std::max(largest, static_cast<int>(e.vertices.size()));
  if (graph.d() != largest) out << " d " << graph.d();
  out << '\n';
  for (const auto& e : graph.edges()) {
    out << "e " << e.weight;
    for (int v : e.vertices) out << ' ' << v;
    out << " 0\n";
  }
  return out.str();
}

std::string serialize(const AbsIoInstance& inst) {
  std::ostringstream out;
  out << "p absio " << inst.num_vars << ' ' << inst.columns.size() << ' ' << inst.alpha << '\n';
  for (const auto& c : inst.columns) {
    out << "col " << c.weight;
    for (std::size_t i = 0; i < c.exponents.size(); ++i) {
      if (c.exponents[i] != 0) out << ' ' << i + 1 << ':' << c.exponents[i];
    }
    out << " 0\n";
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.num_vars); ++i) {
    if (inst.lower[i].is_neg_inf() && inst.upper[i].is_pos_inf()) continue;
    out << "b " << i + 1 << ' ' << to_string(inst.lower[i]) << ' ' << to_string(inst.upper[i]) << '\n';
  }
  return out.str();
}

std::string serialize(const Graph& graph) {
  std::ostringstream out;
  out << "p edge " << graph.num_vertices() << ' ' << graph.edges().size() << '\n';
  for (const auto& [u, v] : graph.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

std::string serialize(const InstanceFile& file) {
  return std::visit([](const auto& p) { return serialize(p); }, file.payload);
}

Witness parse_witness(std::string_view text, const FilePayload& instance) {
  const auto lines = tokenize(text);
  if (const auto* f = std::get_if<WeightedFormula>(&instance)) {
    Assignment beta{std::vector<bool>(static_cast<std::size_t>(f->num_vars()), false)};
    std::set<int> seen;
    for (const auto& line : lines) {
      Cursor c(line);
      if (c.next("v").text != "v") c.error_here("expected 'v <lit>...'");
      while (!c.done()) {
        const long long lit = c.integer("literal");
        if (lit == 0) break;
        const long long var = lit < 0 ? -lit : lit;
        if (var > f->num_vars()) c.error_here("variable out of range");
        if (!seen.insert(static_cast<int>(var)).second) c.error_here("variable repeated in witness");
        beta.values[static_cast<std::size_t>(var - 1)] = lit > 0;
      }
      c.expect_end();
    }
    return beta;
  }
  if (const auto* g = std::get_if<WeightedHypergraph>(&instance)) {
    std::set<int> x;
    for (const auto& line : lines) {
      Cursor c(line);
      if (c.next("s").text != "s") c.error_here("expected 's <vertex>...'");
      while (!c.done()) {
        const long long v = c.integer("vertex");
        if (v == 0) break;
        if (!g->has_vertex(static_cast<int>(v))) c.error_here("vertex out of range");
        if (!x.insert(static_cast<int>(v)).second) c.error_here("vertex repeated in witness");
      }
      c.expect_end();
    }
    return VertexSet(x.begin(), x.end());
  }
  if (const auto* a = std::get_if<AbsIoInstance>(&instance)) {
    AbsIoPoint x(static_cast<std::size_t>(a->num_vars), 0);
    std::set<long long> seen;
    for (const auto& line : lines) {
      Cursor c(line);
      if (c.next("x").text != "x") c.error_here("expected 'x <i> <value>'");
      const long long i = c.integer("variable index");
      if (i < 1 || i > a->num_vars) c.error_here("variable index out of range");
      if (!seen.insert(i).second) c.error_here("variable repeated in witness");
      x[static_cast<std::size_t>(i - 1)] = c.weight("value");
      c.expect_end();
    }
    return x;
  }
  throw ContractError("graph files have no witness format");
}

std::string serialize_witness(const Witness& witness) {
  std::ostringstream out;
  if (const auto* beta = std::get_if<Assignment>(&witness)) {
    out << 'v';
    for (std::size_t i = 0; i < beta->values.size(); ++i) {
      const auto var = static_cast<long long>(i + 1);
      out << ' ' << (beta->values[i] ? var : -var);
    }
    out << " 0\n";
  } else if (const auto* x = std::get_if<VertexSet>(&witness)) {
    out << 's';
    for (int v : *x) out << ' ' << v;
    out << " 0\n";
  } else if (const auto* p = std::get_if<AbsIoPoint>(&witness)) {
    for (std::size_t i = 0; i < p->size(); ++i) out << "x " << i + 1 << ' ' << (*p)[i] << '\n';
  }
  return out.str();
}

}  // namespace abskernel
