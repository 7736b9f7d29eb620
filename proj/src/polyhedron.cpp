#include "hcx/polyhedron.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

#include "hcx/error.hpp"
#include "hcx/linalg.hpp"

namespace hcx {

std::string to_string(const CubeFacetId& f) {
  return std::string(f.sigma > 0 ? "+" : "-") + "x" + std::to_string(f.j + 1);
}

std::vector<CubeFacetId> cube_facets(std::size_t n) {
  std::vector<CubeFacetId> out;
  out.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.push_back({j, 1});
    out.push_back({j, -1});
  }
  return out;
}

HPolyhedron::HPolyhedron(ConstraintSystem sys, const FeasibilityOptions& opts) : sys_(std::move(sys)) {
  if (sys_.dim() == 0) throw Error(ErrorCode::DimensionMismatch, "polyhedron needs dimension >= 1");
  if (!sys_.all_closed()) {
    throw Error(ErrorCode::StrictInequalityUnsupported, "polyhedra are intersections of closed halfspaces");
  }
  for (const auto& c : sys_.constraints()) {
    if (c.is_trivial()) throw Error(ErrorCode::TrivialInequality, "trivial constraint in polyhedron");
  }
  ImpliedEqualities eq = implied_equalities(sys_, opts);  // throws InfeasibleInput when empty
  dim_aff_ = eq.dim_aff;
  tight_ = std::move(eq.tight);
}

ConstraintSystem ConeSystem::checked(ConstraintSystem sys) {
  if (!sys.homogeneous()) throw Error(ErrorCode::NotACone, "cone constraints must have zero right-hand side");
  return sys;
}

ConeSystem::ConeSystem(ConstraintSystem sys, const FeasibilityOptions& opts)
    : poly_(checked(std::move(sys)), opts) {}

ConstraintSystem face_system(const HPolyhedron& p, const std::vector<std::size_t>& active) {
  ConstraintSystem out = p.system();
  for (auto i : active) {
    LinConstraint reverse = p.system()[i].negated();
    reverse.rel = Rel::GE;
    out.add(std::move(reverse));
  }
  return out;
}

namespace {

// Maximal active set of the face selected by `active`, or nullopt if the
// face is empty.
std::optional<std::vector<std::size_t>> close_active_set(const HPolyhedron& p,
                                                         const std::vector<std::size_t>& active,
                                                         const FeasibilityOptions& opts) {
  const ConstraintSystem fs = face_system(p, active);
  if (!is_feasible(fs, opts)) return std::nullopt;
  const ImpliedEqualities eq = implied_equalities(fs, opts);
  std::vector<std::size_t> out;
  for (auto i : eq.tight) {
    if (i < p.system().size()) out.push_back(i);
  }
  return out;
}

std::size_t face_dimension(const HPolyhedron& p, const std::vector<std::size_t>& active) {
  RMatrix rows;
  for (auto i : active) rows.emplace_back(p.system()[i].coeffs);
  return p.dim() - rank(rows, p.dim());
}

// K plus the strict conditions sigma x_j > |x_i| (i != j) and sigma x_j > 0.
ConstraintSystem sector_interior_query(const ConstraintSystem& k, CubeFacetId f) {
  const std::size_t n = k.dim();
  ConstraintSystem q = k;
  RVec dom(n);
  dom[f.j] = f.sigma;
  q.add_gt(dom, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == f.j) continue;
    for (int s : {1, -1}) {
      RVec c(n);
      c[f.j] = f.sigma;
      c[i] = -s;
      q.add_gt(c, 0);
    }
  }
  return q;
}

}  // namespace

std::vector<FaceDesc> enumerate_faces(const HPolyhedron& p, const FaceOptions& opts) {
  const std::vector<std::size_t>& base = p.tight();
  const std::size_t m = p.system().size();
  std::set<std::vector<std::size_t>> seen{base};
  std::vector<FaceDesc> faces;
  std::deque<std::vector<std::size_t>> queue{base};
  std::size_t candidates = 0;
  while (!queue.empty()) {
    const std::vector<std::size_t> cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t j = 0; j < m; ++j) {
      if (std::binary_search(cur.begin(), cur.end(), j)) continue;
      if (++candidates > opts.max_candidates) {
        throw Error(ErrorCode::ResourceCap, "face enumeration exceeded " +
                                                std::to_string(opts.max_candidates) + " candidate sets");
      }
      std::vector<std::size_t> cand = cur;
      cand.insert(std::upper_bound(cand.begin(), cand.end(), j), j);
      auto closed = close_active_set(p, cand, opts.fm);
      if (!closed || seen.count(*closed)) continue;
      seen.insert(*closed);
      faces.push_back({*closed, face_dimension(p, *closed)});
      queue.push_back(std::move(*closed));
    }
  }
  return faces;
}

std::vector<FaceDesc> minimal_faces(const std::vector<FaceDesc>& faces) {
  std::vector<FaceDesc> out;
  for (const auto& f : faces) {
    const bool has_smaller = std::any_of(faces.begin(), faces.end(), [&](const FaceDesc& g) {
      return g.active.size() > f.active.size() &&
             std::includes(g.active.begin(), g.active.end(), f.active.begin(), f.active.end());
    });
    if (!has_smaller) out.push_back(f);
  }
  return out;
}

ConeSystem tangent_cone_at_face(const HPolyhedron& p, const FaceDesc& f) {
  ConstraintSystem k(p.dim());
  for (auto i : f.active) k.add(LinConstraint{p.system()[i].coeffs, Rel::GE, Rat(0)});
  return ConeSystem(std::move(k));
}

bool facet_relint_meets(const ConeSystem& k, CubeFacetId f, const FeasibilityOptions& opts) {
  if (f.j >= k.dim()) throw Error(ErrorCode::IndexOutOfRange, "cube facet coordinate out of range");
  return is_feasible(sector_interior_query(k.system(), f), opts);
}

std::vector<CubeFacetId> sector_avoidance(const ConeSystem& c, const FeasibilityOptions& opts) {
  std::vector<CubeFacetId> out;
  for (const auto& f : cube_facets(c.dim())) {
    if (!facet_relint_meets(c, f, opts)) out.push_back(f);
  }
  return out;
}

bool kc_contains(const ConeSystem& c, const RVec& x, const FeasibilityOptions& opts) {
  const std::size_t n = c.dim();
  if (x.dim() != n) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from cone");
  if (!c.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "K_C needs a cone with interior");
  const std::vector<CubeFacetId> avoided = sector_avoidance(c, opts);
  const std::vector<RVec> apex = lineality_basis(c.system());
  const std::size_t k = apex.size();
  auto in_avoided = [&](CubeFacetId f) { return std::find(avoided.begin(), avoided.end(), f) != avoided.end(); };
  // x lies outside K_C iff some a in apex(C) makes a sector in S_C attain
  // ||x - a||_inf while every sector outside S_C falls strictly short.
  for (const auto& top : avoided) {
    ConstraintSystem q(k);
    for (const auto& f : cube_facets(n)) {
      if (f == top) continue;
      // top.sigma (x_top - a_top) - f.sigma (x_f - a_f) >= 0, with a = sum t_l apex_l.
      LinConstraint row;
      row.coeffs.resize(k);
      for (std::size_t l = 0; l < k; ++l) {
        row.coeffs[l] = Rat(f.sigma) * apex[l][f.j] - Rat(top.sigma) * apex[l][top.j];
      }
      row.rhs = Rat(f.sigma) * x[f.j] - Rat(top.sigma) * x[top.j];
      row.rel = in_avoided(f) ? Rel::GE : Rel::GT;
      q.add(std::move(row));
    }
    if (is_feasible(q, opts)) return false;
  }
  return true;
}

}  // namespace hcx
