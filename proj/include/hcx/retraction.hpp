#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcx/error.hpp"
#include "hcx/feasibility.hpp"

namespace hcx {

/// x_hat -> w . x_hat + b, where x_hat omits the clamped coordinate.
struct AffineAtom {
  RVec w;
  Rat b;

  Rat eval(const RVec& x_hat) const;
};

enum class BoundKind { Lower, Upper };

/// Lower: max over groups of min over atoms. Upper: min over groups of max
/// over atoms. `lambda` is the declared Lipschitz bound.
struct BoundFunc {
  BoundKind kind = BoundKind::Lower;
  std::vector<std::vector<AffineAtom>> groups;
  Rat lambda{1};

  Rat eval(const RVec& x_hat) const;
};

struct CoordBounds {
  std::size_t i = 0;  // 0-based coordinate
  std::optional<BoundFunc> lower;
  std::optional<BoundFunc> upper;
};

/// Q = {x : lower_i(x_hat_i) <= x_i <= upper_i(x_hat_i) for the listed i}.
/// The constructor validates shapes, declared bounds (DeclaredBoundViolated)
/// and lower <= upper everywhere (BoundsCrossed).
class BoxConstraintSet {
 public:
  BoxConstraintSet(std::size_t dim, std::vector<CoordBounds> coords, const FeasibilityOptions& opts = {});

  std::size_t dim() const { return dim_; }
  const std::vector<CoordBounds>& coords() const { return coords_; }
  const CoordBounds* find(std::size_t i) const;
  /// Largest declared lambda; 0 for an empty index set.
  Rat lambda() const;
  /// Listed coordinates in increasing order.
  std::vector<std::size_t> default_order() const;
  /// Every bound holds up to `tol`.
  bool contains(const RVec& x, const Rat& tol = Rat(0)) const;

 private:
  std::size_t dim_;
  std::vector<CoordBounds> coords_;
};

/// x with coordinate i removed (empty for dim 1).
RVec hat(const RVec& x, std::size_t i);

/// Max of l1(w) over the atoms; throws DeclaredBoundViolated above lambda.
Rat lipschitz_bound(const BoundFunc& f);

RVec clamp_step(const BoxConstraintSet& q, std::size_t i, const RVec& x);

RVec cycle_operator(const BoxConstraintSet& q, const std::vector<std::size_t>& order, const RVec& x);

struct RetractionOptions {
  Rat tol = pow2_neg(40);
  std::size_t max_iter = 1000000;
};

struct RetractionResult {
  RVec point;
  std::vector<Rat> trace;  // ||T^{m+1} x - T^m x||_inf
};

class MaxIterError : public Error {
 public:
  MaxIterError(const std::string& what, RetractionResult best)
      : Error(ErrorCode::MaxIterExceeded, what), best_(std::move(best)) {}
  const RetractionResult& best() const { return best_; }

 private:
  RetractionResult best_;
};

/// Iterates T until a step of size <= tol. Throws MaxIterError.
RetractionResult iterate_retraction(const BoxConstraintSet& q, const RVec& x, const std::vector<std::size_t>& order,
                                    const RetractionOptions& opts = {});

/// delta_{m+1} <= lambda * delta_m for every consecutive pair.
bool trace_contracts(const std::vector<Rat>& trace, const Rat& lambda);

/// Q_k: every bound f replaced by l (f - R) + R with l = 1 - 1/k.
BoxConstraintSet rescale_bounds(const BoxConstraintSet& q, const Rat& r, std::size_t k,
                                const FeasibilityOptions& opts = {});

/// (min{x1, 0, (x2 + x3 + x4)/3}, x2, x3, x4).
RVec example2_retraction(const RVec& x);

}  // namespace hcx
