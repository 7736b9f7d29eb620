#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hcx/feasibility.hpp"

namespace hcx {

/// Facet sigma * F_j of the cube [-1,1]^n, equivalently the sector cone
/// sigma * C_j = {x : sigma x_j = ||x||_inf}. `j` is 0-based.
struct CubeFacetId {
  std::size_t j = 0;
  int sigma = 1;

  CubeFacetId opposite() const { return {j, -sigma}; }
  friend bool operator==(const CubeFacetId&, const CubeFacetId&) = default;
  friend auto operator<=>(const CubeFacetId& a, const CubeFacetId& b) {
    // j ascending, then + before -.
    if (auto c = a.j <=> b.j; c != 0) return c;
    return b.sigma <=> a.sigma;
  }
};

/// "+x2" / "-x1" with 1-based coordinate numbering.
std::string to_string(const CubeFacetId& f);

/// The 2n identifiers (j, +), (j, -) in scan order.
std::vector<CubeFacetId> cube_facets(std::size_t n);

/// Non-empty closed polyhedron {x : A x >= b}.
class HPolyhedron {
 public:
  explicit HPolyhedron(ConstraintSystem sys, const FeasibilityOptions& opts = {});

  const ConstraintSystem& system() const { return sys_; }
  std::size_t dim() const { return sys_.dim(); }
  std::size_t dim_aff() const { return dim_aff_; }
  /// Constraints tight on all of P.
  const std::vector<std::size_t>& tight() const { return tight_; }
  bool full_dimensional() const { return dim_aff_ == sys_.dim(); }
  bool contains(const RVec& x) const { return sys_.satisfied_by(x); }

 private:
  ConstraintSystem sys_;
  std::size_t dim_aff_ = 0;
  std::vector<std::size_t> tight_;
};

/// Polyhedral cone {x : A x >= 0}.
class ConeSystem {
 public:
  explicit ConeSystem(ConstraintSystem sys, const FeasibilityOptions& opts = {});

  const HPolyhedron& polyhedron() const { return poly_; }
  const ConstraintSystem& system() const { return poly_.system(); }
  std::size_t dim() const { return poly_.dim(); }
  bool full_dimensional() const { return poly_.full_dimensional(); }

 private:
  static ConstraintSystem checked(ConstraintSystem sys);
  HPolyhedron poly_;
};

/// Face keyed by its maximal active constraint set (sorted indices).
struct FaceDesc {
  std::vector<std::size_t> active;
  std::size_t dim_face = 0;

  friend bool operator==(const FaceDesc&, const FaceDesc&) = default;
};

struct FaceOptions {
  std::size_t max_candidates = 4096;
  FeasibilityOptions fm;
};

/// P with every constraint of `active` turned into an equality.
ConstraintSystem face_system(const HPolyhedron& p, const std::vector<std::size_t>& active);

/// All non-empty proper faces, breadth-first from the facets. Throws
/// ResourceCap when more than `max_candidates` active sets are examined.
std::vector<FaceDesc> enumerate_faces(const HPolyhedron& p, const FaceOptions& opts = {});

/// Faces whose active set is maximal (they contain no smaller face).
std::vector<FaceDesc> minimal_faces(const std::vector<FaceDesc>& faces);

/// T_pP - p for p in relint(F).
ConeSystem tangent_cone_at_face(const HPolyhedron& p, const FaceDesc& f);

/// True iff relint(sigma F_j) meets K (equivalently int(sigma C_j) meets K).
bool facet_relint_meets(const ConeSystem& k, CubeFacetId f, const FeasibilityOptions& opts = {});

/// Sector cones whose interior misses C, in scan order.
std::vector<CubeFacetId> sector_avoidance(const ConeSystem& c, const FeasibilityOptions& opts = {});

/// Membership of x in K_C. Requires int(C) non-empty (NotFullDimensional).
bool kc_contains(const ConeSystem& c, const RVec& x, const FeasibilityOptions& opts = {});

}  // namespace hcx
