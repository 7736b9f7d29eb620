#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcx/feasibility.hpp"
#include "hcx/injectivity.hpp"

namespace hcx {

/// a x_i + b x_j (>= | >) c over variables x_1..x_n; j = 0 is the zero
/// variable x_0, which only ever carries coefficient b = 0.
struct TwoVarIneq {
  std::size_t i = 1;
  Rat a;
  std::size_t j = 0;
  Rat b;
  Rel rel = Rel::GE;
  Rat c;

  /// Validating constructor for user-level inequalities.
  static TwoVarIneq make(std::size_t i, const Rat& a, std::size_t j, const Rat& b, Rel rel, const Rat& c);

  bool single_variable() const { return j == 0; }
  /// `x` holds x_1..x_n.
  bool satisfied_by(const RVec& x) const;
  std::string str() const;
};

class TwoVarSystem {
 public:
  TwoVarSystem() = default;
  TwoVarSystem(std::size_t n, std::vector<TwoVarIneq> inequalities);

  std::size_t n() const { return n_; }
  const std::vector<TwoVarIneq>& inequalities() const { return ineqs_; }
  std::size_t size() const { return ineqs_.size(); }
  bool all_closed() const;

 private:
  std::size_t n_ = 0;
  std::vector<TwoVarIneq> ineqs_;
};

/// One inequality per line: `term ((+|-) term)? (>=|>) rational`, with
/// `term := [rational [*]] x<index>`; `#` starts a comment. The variable
/// count is the largest index used. Errors carry `line:column`.
TwoVarSystem parse_system(std::string_view text);

/// The same system as general linear constraints over x_1..x_n.
ConstraintSystem to_constraint_system(const TwoVarSystem& sys);

struct GraphEdge {
  std::size_t id = 0;
  std::size_t u = 0;  // carries label.a
  std::size_t v = 0;  // carries label.b
  TwoVarIneq label;
  bool residue = false;

  bool self_loop() const { return u == v; }
};

/// Undirected labeled multigraph on x_0..x_n. Closures may carry
/// variable-free residue self-loops at x_0.
struct ConstraintGraph {
  std::size_t n = 0;
  std::vector<GraphEdge> edges;
  /// A false variable-free residue was added by the closure.
  bool infeasible_residue = false;
};

ConstraintGraph build_graph(const TwoVarSystem& sys);

/// Edge label oriented along the traversal: a on the left vertex, b on the right.
struct OrientedLabel {
  Rat a;
  Rat b;
  Rel rel = Rel::GE;
  Rat c;
};

struct PathDesc {
  std::vector<std::size_t> vertices;  // v_1 .. v_{m+1}
  std::vector<std::size_t> edges;     // edge ids E_1 .. E_m
  std::vector<OrientedLabel> labels;

  bool is_loop() const { return !vertices.empty() && vertices.front() == vertices.back(); }
  std::string str() const;
};

/// Builds a path through the given vertices and edge ids, orienting each
/// label. Throws InvalidArgument when an edge does not join its vertices.
PathDesc make_path(const ConstraintGraph& g, const std::vector<std::size_t>& vertices,
                   const std::vector<std::size_t>& edge_ids);

PathDesc reverse(const PathDesc& p);

/// b_l and a_{l+1} strictly opposite in sign at every interior junction.
bool is_admissible(const PathDesc& p);

/// a v_first + b v_last (>= | >) c, obtained by chaining the labels.
struct Residue {
  std::size_t from = 0;
  std::size_t to = 0;
  Rat a;
  Rat b;
  Rel rel = Rel::GE;
  Rat c;

  /// Loop residue (a + b) v REL c with a + b = 0 that is false.
  bool is_false() const;
  std::string str() const;
};

/// Throws NotAdmissible.
Residue residue_of_path(const PathDesc& p);

struct LoopOptions {
  std::size_t max_variables = 12;
  std::size_t max_edges = 40;
  std::size_t max_loops = 200000;
};

/// One canonical representative per class of simple admissible loops
/// (modulo reversal and admissible rotation), sorted by vertex sequence then
/// edge ids. Self-loops are not enumerated.
std::vector<PathDesc> enumerate_simple_admissible_loops(const ConstraintGraph& g, const LoopOptions& opts = {});

/// Adds one residue edge per canonical loop of g.
ConstraintGraph closure(const ConstraintGraph& g, const LoopOptions& opts = {});

struct SatResult {
  bool satisfiable = true;
  std::optional<PathDesc> certificate;  // infeasible loop of the closure
  std::optional<Residue> residue;       // its recomputed residue
  ConstraintGraph closure;
};

/// Loop-residue decision with a mandatory Fourier-Motzkin cross-check;
/// disagreement throws Error(Discrepancy).
SatResult is_satisfiable(const TwoVarSystem& sys, const LoopOptions& opts = {},
                         const FeasibilityOptions& fm = {});

/// Injectivity of a closed, satisfiable, full-dimensional 2VPI polyhedron.
/// Throws StrictInequalityUnsupported, Unsatisfiable, NotFullDimensional.
InjectivityReport check_injective_2vpi(const TwoVarSystem& sys, const InjectivityOptions& opts = {});

}  // namespace hcx
