#include "hcx/twovpi.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "hcx/error.hpp"

namespace hcx {

TwoVarIneq TwoVarIneq::make(std::size_t i, const Rat& a, std::size_t j, const Rat& b, Rel rel, const Rat& c) {
  if (i == 0) throw Error(ErrorCode::InvalidArgument, "x0 cannot carry a coefficient");
  if (a.is_zero()) throw Error(ErrorCode::TrivialInequality, "zero coefficient on x" + std::to_string(i));
  if (j == 0 && !b.is_zero()) throw Error(ErrorCode::InvalidArgument, "x0 only appears with coefficient zero");
  if (j != 0 && b.is_zero()) throw Error(ErrorCode::TrivialInequality, "zero coefficient on x" + std::to_string(j));
  if (i == j) throw Error(ErrorCode::InvalidArgument, "an inequality needs two different variables");
  return TwoVarIneq{i, a, j, b, rel, c};
}

bool TwoVarIneq::satisfied_by(const RVec& x) const {
  Rat lhs = a * x[i - 1];
  if (j != 0) lhs += b * x[j - 1];
  return rel == Rel::GT ? lhs > c : lhs >= c;
}

namespace {

std::string term_str(const Rat& coeff, std::size_t var, bool first) {
  std::string out;
  Rat mag = coeff;
  if (coeff.sign() < 0) {
    out += first ? "-" : " - ";
    mag = -coeff;
  } else if (!first) {
    out += " + ";
  }
  if (mag != Rat(1)) out += mag.str() + " ";
  return out + "x" + std::to_string(var);
}

}  // namespace

std::string TwoVarIneq::str() const {
  if (i == 0 && j == 0) return std::string("0 ") + rel_symbol(rel) + " " + c.str();
  std::string out = term_str(a, i, true);
  if (j != 0) out += term_str(b, j, false);
  return out + " " + rel_symbol(rel) + " " + c.str();
}

TwoVarSystem::TwoVarSystem(std::size_t n, std::vector<TwoVarIneq> inequalities)
    : n_(n), ineqs_(std::move(inequalities)) {
  for (const auto& q : ineqs_) {
    if (q.i > n_ || q.j > n_) throw Error(ErrorCode::IndexOutOfRange, "variable index exceeds system size");
    TwoVarIneq::make(q.i, q.a, q.j, q.b, q.rel, q.c);  // validates
  }
}

bool TwoVarSystem::all_closed() const {
  return std::all_of(ineqs_.begin(), ineqs_.end(), [](const TwoVarIneq& q) { return q.rel == Rel::GE; });
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t lineno) : s_(line), line_(lineno) {}

  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw Error(code, "line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  std::string digits() {
    std::string out;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) out += s_[pos_++];
    return out;
  }

  // Unsigned literal `int` or `int/int`; empty if none.
  std::optional<Rat> unsigned_rational() {
    skip_ws();
    const std::size_t start = pos_;
    std::string text = digits();
    if (text.empty()) return std::nullopt;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::string den = digits();
      if (den.empty()) fail(ErrorCode::SyntaxError, "expected denominator");
      text += "/" + den;
    }
    try {
      return Rat::parse(text);
    } catch (const Error&) {
      pos_ = start;
      fail(ErrorCode::SyntaxError, "malformed rational '" + text + "'");
    }
  }

  TwoVarIneq parse() {
    struct Term {
      Rat coeff;
      std::size_t var;
    };
    std::vector<Term> terms;
    bool constant_only = false;
    for (bool first = true;; first = false) {
      char ch = peek();
      int sign = 1;
      if (ch == '+' || ch == '-') {
        sign = ch == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      std::optional<Rat> coeff = unsigned_rational();
      if (peek() == '*') {
        if (!coeff) fail(ErrorCode::SyntaxError, "'*' without a coefficient");
        ++pos_;
      }
      if (peek() != 'x') {
        if (coeff && first && (peek() == '>' || peek() == '<' || peek() == '=')) {
          constant_only = true;
          break;
        }
        fail(ErrorCode::SyntaxError, "expected variable 'x<index>'");
      }
      ++pos_;
      const std::string idx = digits();
      if (idx.empty()) fail(ErrorCode::SyntaxError, "expected variable index after 'x'");
      const std::size_t var = std::stoul(idx);
      if (var == 0) fail(ErrorCode::SyntaxError, "x0 is reserved for the zero variable");
      Rat value = coeff.value_or(Rat(1));
      if (sign < 0) value = -value;
      for (const auto& t : terms) {
        if (t.var == var) fail(ErrorCode::SyntaxError, "variable x" + idx + " appears twice");
      }
      terms.push_back({value, var});
    }
    skip_ws();
    Rel rel = Rel::GE;
    if (s_.substr(pos_, 2) == ">=") {
      pos_ += 2;
    } else if (pos_ < s_.size() && s_[pos_] == '>') {
      rel = Rel::GT;
      ++pos_;
    } else {
      fail(ErrorCode::SyntaxError, "expected '>=' or '>'");
    }
    char ch = peek();
    bool negative = false;
    if (ch == '+' || ch == '-') {
      negative = ch == '-';
      ++pos_;
    }
    std::optional<Rat> rhs = unsigned_rational();
    if (!rhs) fail(ErrorCode::SyntaxError, "expected rational right-hand side");
    if (negative) *rhs = -*rhs;
    if (!at_end()) fail(ErrorCode::SyntaxError, "unexpected trailing input");

    if (constant_only) fail(ErrorCode::TrivialInequality, "inequality without variables");
    if (terms.size() > 2) {
      fail(ErrorCode::TooManyVariables, "inequality has " + std::to_string(terms.size()) + " variables (at most 2)");
    }
    const bool all_zero = std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.coeff.is_zero(); });
    if (all_zero) fail(ErrorCode::TrivialInequality, "all coefficients are zero");
    for (const auto& t : terms) {
      if (t.coeff.is_zero()) fail(ErrorCode::SyntaxError, "zero coefficient on x" + std::to_string(t.var));
    }
    if (terms.size() == 1) return TwoVarIneq{terms[0].var, terms[0].coeff, 0, Rat(0), rel, *rhs};
    return TwoVarIneq{terms[0].var, terms[0].coeff, terms[1].var, terms[1].coeff, rel, *rhs};
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

TwoVarSystem parse_system(std::string_view text) {
  std::vector<TwoVarIneq> out;
  std::size_t n = 0;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    TwoVarIneq q = LineParser(line, lineno).parse();
    n = std::max({n, q.i, q.j});
    out.push_back(q);
  }
  return TwoVarSystem(n, std::move(out));
}

ConstraintSystem to_constraint_system(const TwoVarSystem& sys) {
  ConstraintSystem out(std::max<std::size_t>(sys.n(), 1));
  for (const auto& q : sys.inequalities()) {
    RVec coeffs(out.dim());
    coeffs[q.i - 1] = q.a;
    if (q.j != 0) coeffs[q.j - 1] = q.b;
    out.add(LinConstraint::make(coeffs, q.rel, q.c));
  }
  return out;
}

ConstraintGraph build_graph(const TwoVarSystem& sys) {
  ConstraintGraph g;
  g.n = sys.n();
  for (const auto& q : sys.inequalities()) {
    const std::size_t id = g.edges.size();
    g.edges.push_back(GraphEdge{id, q.i, q.j, q, false});
  }
  return g;
}

std::string PathDesc::str() const {
  std::string out = "(";
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (k) out += ",";
    out += "x" + std::to_string(vertices[k]);
  }
  return out + ")";
}

namespace {

OrientedLabel orient(const GraphEdge& e, std::size_t from) {
  const TwoVarIneq& q = e.label;
  if (from == e.u) return {q.a, q.b, q.rel, q.c};
  return {q.b, q.a, q.rel, q.c};
}

}  // namespace

PathDesc make_path(const ConstraintGraph& g, const std::vector<std::size_t>& vertices,
                   const std::vector<std::size_t>& edge_ids) {
  if (vertices.size() != edge_ids.size() + 1 || edge_ids.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a path needs m >= 1 edges and m + 1 vertices");
  }
  PathDesc p;
  p.vertices = vertices;
  p.edges = edge_ids;
  for (std::size_t l = 0; l < edge_ids.size(); ++l) {
    if (edge_ids[l] >= g.edges.size()) throw Error(ErrorCode::IndexOutOfRange, "unknown edge id");
    const GraphEdge& e = g.edges[edge_ids[l]];
    const std::size_t a = vertices[l], b = vertices[l + 1];
    const bool joins = (e.u == a && e.v == b) || (e.u == b && e.v == a);
    if (!joins) throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(e.id + 1) + " does not join the path vertices");
    p.labels.push_back(orient(e, a));
  }
  return p;
}

PathDesc reverse(const PathDesc& p) {
  PathDesc r;
  r.vertices.assign(p.vertices.rbegin(), p.vertices.rend());
  r.edges.assign(p.edges.rbegin(), p.edges.rend());
  for (auto it = p.labels.rbegin(); it != p.labels.rend(); ++it) r.labels.push_back({it->b, it->a, it->rel, it->c});
  return r;
}

bool is_admissible(const PathDesc& p) {
  for (std::size_t l = 0; l + 1 < p.labels.size(); ++l) {
    if (p.labels[l].b.sign() * p.labels[l + 1].a.sign() != -1) return false;
  }
  return true;
}

bool Residue::is_false() const {
  if (from != to) return false;
  const Rat sum = a + b;
  if (!sum.is_zero()) return false;
  return rel == Rel::GT ? c.sign() >= 0 : c.sign() > 0;
}

std::string Residue::str() const {
  auto var = [](std::size_t v) { return "x" + std::to_string(v); };
  if (from == to) {
    const Rat sum = a + b;
    if (sum.is_zero() || from == 0) return std::string("0 ") + rel_symbol(rel) + " " + c.str();
    return sum.str() + " " + var(from) + " " + rel_symbol(rel) + " " + c.str();
  }
  return a.str() + " " + var(from) + " + " + b.str() + " " + var(to) + " " + rel_symbol(rel) + " " + c.str();
}

Residue residue_of_path(const PathDesc& p) {
  if (p.labels.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");
  if (!is_admissible(p)) throw Error(ErrorCode::NotAdmissible, "path " + p.str() + " is not admissible");
  Residue r{p.vertices.front(), p.vertices.back(), p.labels[0].a, p.labels[0].b, p.labels[0].rel, p.labels[0].c};
  for (std::size_t l = 1; l < p.labels.size(); ++l) {
    const OrientedLabel& next = p.labels[l];
    const Rat wa = next.a.abs();  // multiplier of the accumulated inequality
    const Rat wb = r.b.abs();     // multiplier of the next label
    r.a = wa * r.a;
    r.b = wb * next.b;
    r.c = wa * r.c + wb * next.c;
    r.rel = strictest(r.rel, next.rel);
  }
  return r;
}

namespace {

std::vector<std::size_t> cyclic_key(const std::vector<std::size_t>& seq) {
  std::vector<std::size_t> best;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::size_t> s = seq;
    if (dir == 1) std::reverse(s.begin(), s.end());
    for (std::size_t rot = 0; rot < s.size(); ++rot) {
      std::vector<std::size_t> cand(s.begin() + static_cast<std::ptrdiff_t>(rot), s.end());
      cand.insert(cand.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(rot));
      if (best.empty() || cand < best) best = std::move(cand);
    }
  }
  return best;
}

bool path_less(const PathDesc& x, const PathDesc& y) {
  if (x.vertices != y.vertices) return x.vertices < y.vertices;
  return x.edges < y.edges;
}

class LoopSearch {
 public:
  LoopSearch(const ConstraintGraph& g, const LoopOptions& opts) : g_(g), opts_(opts), adj_(g.n + 1) {
    for (const auto& e : g.edges) {
      if (e.self_loop()) continue;
      adj_[e.u].push_back(e.id);
      adj_[e.v].push_back(e.id);
    }
  }

  std::vector<PathDesc> run() {
    for (std::size_t s = 0; s <= g_.n; ++s) {
      start_ = s;
      visited_.assign(g_.n + 1, false);
      path_ = PathDesc{{s}, {}, {}};
      dfs(s);
    }
    std::vector<PathDesc> out;
    out.reserve(classes_.size());
    for (auto& [key, rep] : classes_) out.push_back(std::move(rep));
    std::sort(out.begin(), out.end(), path_less);
    return out;
  }

 private:
  void dfs(std::size_t cur) {
    for (std::size_t id : adj_[cur]) {
      const GraphEdge& e = g_.edges[id];
      const OrientedLabel lab = orient(e, cur);
      if (!path_.labels.empty() && path_.labels.back().b.sign() * lab.a.sign() != -1) continue;
      const std::size_t next = e.u == cur ? e.v : e.u;
      path_.vertices.push_back(next);
      path_.edges.push_back(id);
      path_.labels.push_back(lab);
      if (next == start_) {
        record();
      } else if (!visited_[next]) {
        visited_[next] = true;
        dfs(next);
        visited_[next] = false;
      }
      path_.vertices.pop_back();
      path_.edges.pop_back();
      path_.labels.pop_back();
    }
  }

  void record() {
    if (++found_ > opts_.max_loops) {
      throw Error(ErrorCode::ResourceCap, "more than " + std::to_string(opts_.max_loops) + " admissible loops");
    }
    auto key = cyclic_key(path_.edges);
    auto it = classes_.find(key);
    if (it == classes_.end()) {
      classes_.emplace(std::move(key), path_);
    } else if (path_less(path_, it->second)) {
      it->second = path_;
    }
  }

  const ConstraintGraph& g_;
  const LoopOptions& opts_;
  std::vector<std::vector<std::size_t>> adj_;
  std::map<std::vector<std::size_t>, PathDesc> classes_;
  std::vector<bool> visited_;
  PathDesc path_;
  std::size_t start_ = 0;
  std::size_t found_ = 0;
};

void check_caps(const ConstraintGraph& g, const LoopOptions& opts) {
  if (g.n > opts.max_variables) {
    throw Error(ErrorCode::ResourceCap, "loop-residue search supports at most " +
                                            std::to_string(opts.max_variables) + " variables");
  }
  const auto base_edges = static_cast<std::size_t>(
      std::count_if(g.edges.begin(), g.edges.end(), [](const GraphEdge& e) { return !e.residue; }));
  if (base_edges > opts.max_edges) {
    throw Error(ErrorCode::ResourceCap, "loop-residue search supports at most " + std::to_string(opts.max_edges) +
                                            " inequalities");
  }
}

}  // namespace

std::vector<PathDesc> enumerate_simple_admissible_loops(const ConstraintGraph& g, const LoopOptions& opts) {
  check_caps(g, opts);
  return LoopSearch(g, opts).run();
}

ConstraintGraph closure(const ConstraintGraph& g, const LoopOptions& opts) {
  ConstraintGraph out = g;
  for (const auto& loop : enumerate_simple_admissible_loops(g, opts)) {
    const Residue r = residue_of_path(loop);
    const Rat sum = r.a + r.b;
    GraphEdge e;
    e.id = out.edges.size();
    e.residue = true;
    if (!sum.is_zero()) {
      // (a + b) v REL c, scaled to unit coefficient.
      e.u = r.from;
      e.v = 0;
      e.label = TwoVarIneq{r.from, Rat(sum.sign()), 0, Rat(0), r.rel, r.c / sum.abs()};
    } else {
      e.u = e.v = 0;
      e.label = TwoVarIneq{0, Rat(0), 0, Rat(0), r.rel, r.c};
      if (r.is_false()) out.infeasible_residue = true;
    }
    out.edges.push_back(std::move(e));
  }
  return out;
}

SatResult is_satisfiable(const TwoVarSystem& sys, const LoopOptions& opts, const FeasibilityOptions& fm) {
  SatResult res;
  res.closure = closure(build_graph(sys), opts);
  for (const auto& loop : enumerate_simple_admissible_loops(res.closure, opts)) {
    const Residue r = residue_of_path(loop);
    if (r.is_false()) {
      res.satisfiable = false;
      res.certificate = loop;
      res.residue = r;
      break;
    }
  }
  if (res.satisfiable) {
    for (const auto& e : res.closure.edges) {
      if (!e.self_loop()) continue;
      PathDesc p = make_path(res.closure, {0, 0}, {e.id});
      const Residue r = residue_of_path(p);
      if (r.is_false()) {
        res.satisfiable = false;
        res.certificate = std::move(p);
        res.residue = r;
        break;
      }
    }
  }
  const bool fm_feasible = is_feasible(to_constraint_system(sys), fm);
  if (fm_feasible != res.satisfiable) {
    throw Error(ErrorCode::Discrepancy, std::string("loop-residue verdict ") + (res.satisfiable ? "SAT" : "UNSAT") +
                                            " disagrees with Fourier-Motzkin verdict " + (fm_feasible ? "SAT" : "UNSAT"));
  }
  return res;
}

InjectivityReport check_injective_2vpi(const TwoVarSystem& sys, const InjectivityOptions& opts) {
  if (!sys.all_closed()) {
    throw Error(ErrorCode::StrictInequalityUnsupported, "injectivity check needs closed (>=) inequalities");
  }
  ConstraintSystem cs = to_constraint_system(sys);
  if (!is_feasible(cs, opts.faces.fm)) throw Error(ErrorCode::Unsatisfiable, "the system has no solution");
  const HPolyhedron p(std::move(cs), opts.faces.fm);
  return polyhedron_injective(p, opts);
}

}  // namespace hcx
