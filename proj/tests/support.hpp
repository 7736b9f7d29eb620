#pragma once

#include <string>
#include <vector>

#include "hcx/feasibility.hpp"
#include "hcx/random.hpp"
#include "hcx/retraction.hpp"
#include "hcx/twovpi.hpp"

namespace hcx::testing {

/// Feasibility by minimal-face enumeration, independent of elimination.
/// Exponential; meant for a handful of rows.
bool brute_feasible(const ConstraintSystem& sys);

/// Builds a system from rows {c1, .., cn, rhs} with one relation.
ConstraintSystem rows_ge(std::size_t n, const std::vector<std::vector<long>>& rows);

ConstraintSystem example1();
ConstraintSystem example2();
ConstraintSystem cube(std::size_t n);
ConstraintSystem halfspace(const RVec& nu);

/// Random 2VPI system: n variables, `m` inequalities, coefficients in
/// {-2..2}, rhs in {-2..2}; `strict` allows GT rows.
TwoVarSystem random_2vpi(Rng& rng, std::size_t n, std::size_t m, bool strict, bool homogeneous = false);

/// Random Q on n coordinates whose atoms have l1(w) <= lambda; every
/// coordinate gets bounds (one-sided with probability 1/4 each).
BoxConstraintSet random_box_set(Rng& rng, std::size_t n, const Rat& lambda);

/// Random signed permutation of {0..n-1}.
struct SignedPerm {
  std::vector<std::size_t> perm;
  std::vector<int> signs;
};
SignedPerm random_signed_perm(Rng& rng, std::size_t n);

/// Image of the system under y = S x.
ConstraintSystem transform(const ConstraintSystem& sys, const SignedPerm& s);

}  // namespace hcx::testing
