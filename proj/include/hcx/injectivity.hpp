#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hcx/linalg.hpp"
#include "hcx/polyhedron.hpp"

namespace hcx {

/// Hyperplane {x : x . nu = 0} is injective iff ||nu||_1 <= 2 ||nu||_inf.
/// Throws ZeroVector.
bool hyperplane_injective(const RVec& nu);

/// Coordinates J of size k and coefficients with x_i = sum_j c(i,j) x_j
/// for every i outside J. `coeffs[r][l]` is c(rest[r], J[l]).
struct SubspaceCertificate {
  std::vector<std::size_t> J;
  std::vector<std::size_t> rest;
  RMatrix coeffs;
};

/// Searches k-subsets J in lexicographic order; returns the first one whose
/// coefficient rows all have l1 norm at most 1. Throws DependentBasis.
std::optional<SubspaceCertificate> subspace_injective(const std::vector<RVec>& basis);

/// Independent re-check: row norms <= 1 and the certificate's graph
/// parametrization spans exactly the same subspace as `basis`.
bool verify_subspace_certificate(const std::vector<RVec>& basis, const SubspaceCertificate& cert);

/// First (j, sigma) in scan order with relint(sigma F_j) meeting K and
/// relint(-sigma F_j) missing it. Throws NotFullDimensional.
std::optional<CubeFacetId> cone_asymmetric_facet(const ConeSystem& k, const FeasibilityOptions& opts = {});

enum class Verdict { Injective, NotInjective };
const char* verdict_name(Verdict v);

struct FaceCheck {
  FaceDesc face;
  std::optional<CubeFacetId> witness;
};

struct InjectivityReport {
  Verdict verdict = Verdict::Injective;
  std::vector<FaceCheck> per_face;
  std::optional<FaceDesc> failing_face;
};

struct InjectivityOptions {
  /// Check only the minimal faces (experimental; complete per-face check is the default).
  bool minimal_faces_only = false;
  FaceOptions faces;
};

/// Decides injectivity of a full-dimensional polyhedron one proper face at
/// a time. Throws NotFullDimensional.
InjectivityReport polyhedron_injective(const HPolyhedron& p, const InjectivityOptions& opts = {});

/// Re-runs the cone test for every face of a report against `p`.
bool verify_report(const HPolyhedron& p, const InjectivityReport& report, const FeasibilityOptions& opts = {});

struct Ball {
  RVec center;
  Rat radius;
};

/// Closed l_inf balls sharing one ambient dimension; radii are non-negative.
class BallFamily {
 public:
  BallFamily() = default;
  explicit BallFamily(std::vector<Ball> balls);

  const std::vector<Ball>& balls() const { return balls_; }
  std::size_t size() const { return balls_.size(); }
  std::size_t dim() const { return balls_.empty() ? 0 : balls_.front().center.dim(); }

 private:
  std::vector<Ball> balls_;
};

enum class BallVerdict { Incompatible, Intersects, Violates };
const char* ball_verdict_name(BallVerdict v);

struct BallCheck {
  BallVerdict verdict = BallVerdict::Intersects;
  /// Set for Incompatible: a pair with r_i + r_j < d(x_i, x_j).
  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;
  /// Coordinatewise bounds of the ball intersection (compatible families).
  RVec box_lo, box_hi;
  /// A point of P inside every ball, for Intersects.
  std::optional<RVec> common_point;
};

/// Throws CenterOutsideP.
BallCheck verify_ball_family(const HPolyhedron& p, const BallFamily& fam, const FeasibilityOptions& opts = {});

/// Componentwise-minimal radii with r_i + r_j >= d(x_i, x_j) and r_i >= 0.
std::vector<Rat> minimal_compatible_radii(const std::vector<RVec>& centers);

/// Seeded randomized search for a ball family violating hyperconvexity.
/// Throws NotFullDimensional.
std::optional<BallFamily> search_witness(const HPolyhedron& p, std::size_t trials, std::uint64_t seed,
                                         const FaceOptions& opts = {});

}  // namespace hcx
