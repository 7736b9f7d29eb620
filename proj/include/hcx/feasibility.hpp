#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hcx/rational.hpp"
#include "hcx/vector.hpp"

namespace hcx {

enum class Rel { GE, GT };

inline Rel strictest(Rel a, Rel b) { return (a == Rel::GT || b == Rel::GT) ? Rel::GT : Rel::GE; }
const char* rel_symbol(Rel r);

/// coeffs . x (>= | >) rhs.
///
/// An all-zero coefficient vector is a closed verdict `0 REL rhs`; such rows
/// only arise from elimination. `LinConstraint::make` rejects them.
struct LinConstraint {
  std::vector<Rat> coeffs;
  Rel rel = Rel::GE;
  Rat rhs;

  static LinConstraint make(const RVec& coeffs, Rel rel, const Rat& rhs);

  bool is_trivial() const;
  /// Truth value of a trivial constraint.
  bool verdict() const;
  bool satisfied_by(const RVec& x) const;
  /// The complementary open halfspace: coeffs . x < rhs  (or <= for GT).
  LinConstraint negated() const;
  std::string str() const;
};

class ConstraintSystem {
 public:
  explicit ConstraintSystem(std::size_t dim) : dim_(dim) {}
  ConstraintSystem(std::size_t dim, std::vector<LinConstraint> constraints);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return constraints_.size(); }
  const std::vector<LinConstraint>& constraints() const { return constraints_; }
  const LinConstraint& operator[](std::size_t i) const { return constraints_[i]; }

  void add(LinConstraint c);
  void add_ge(const RVec& coeffs, const Rat& rhs) { add(LinConstraint::make(coeffs, Rel::GE, rhs)); }
  void add_gt(const RVec& coeffs, const Rat& rhs) { add(LinConstraint::make(coeffs, Rel::GT, rhs)); }
  /// coeffs . x = rhs as a pair of GE rows.
  void add_eq(const RVec& coeffs, const Rat& rhs);
  void append(const ConstraintSystem& other);

  bool satisfied_by(const RVec& x) const;
  bool all_closed() const;
  bool homogeneous() const;

 private:
  std::size_t dim_;
  std::vector<LinConstraint> constraints_;
};

struct FeasibilityOptions {
  std::size_t max_constraints = 20000;
};

/// Projects out coordinate k (0-based); the result has dim - 1 variables.
/// False all-zero products are retained as verdict rows.
ConstraintSystem eliminate_variable(const ConstraintSystem& sys, std::size_t k,
                                    const FeasibilityOptions& opts = {});

bool is_feasible(const ConstraintSystem& sys, const FeasibilityOptions& opts = {});

/// A rational point satisfying every constraint exactly, or nullopt when the
/// system is infeasible.
std::optional<RVec> sample_point(const ConstraintSystem& sys, const FeasibilityOptions& opts = {});

struct ImpliedEqualities {
  std::size_t dim_aff = 0;
  std::vector<std::size_t> tight;  // indices of constraints tight on the whole solution set
};

/// Requires a feasible, closed system (InfeasibleInput otherwise).
ImpliedEqualities implied_equalities(const ConstraintSystem& sys, const FeasibilityOptions& opts = {});

/// Basis of {x : coeffs_i . x = 0 for all i}; requires a homogeneous system.
std::vector<RVec> lineality_basis(const ConstraintSystem& cone);

}  // namespace hcx
