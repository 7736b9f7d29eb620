#include "support.hpp"

#include <numeric>

#include "hcx/error.hpp"
#include "hcx/linalg.hpp"

namespace hcx::testing {

namespace {

// One solution of A_I x = b_I with free variables set to 0, if consistent.
std::optional<RVec> solve_rows(const ConstraintSystem& sys, const std::vector<std::size_t>& rows) {
  const std::size_t n = sys.dim();
  RMatrix aug;
  for (auto r : rows) {
    RVec row(n + 1);
    for (std::size_t c = 0; c < n; ++c) row[c] = sys[r].coeffs[c];
    row[n] = sys[r].rhs;
    aug.push_back(std::move(row));
  }
  const RowEchelon e = reduced_row_echelon(aug, n + 1);
  RVec x(n);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == n) return std::nullopt;
    x[e.pivots[k]] = e.rows[k][n];
  }
  return x;
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t p = k; p-- > 0;) {
    if (idx[p] < m - k + p) {
      ++idx[p];
      for (std::size_t q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

// Points of {Ax >= b}, one per minimal face reachable from an independent
// row subset of full row rank. Empty iff the closed system is infeasible.
std::vector<RVec> minimal_face_points(const ConstraintSystem& closed) {
  const std::size_t n = closed.dim();
  const std::size_t m = closed.size();
  std::vector<RVec> out;
  if (m == 0) return {RVec(n)};
  RMatrix a;
  for (const auto& c : closed.constraints()) a.emplace_back(c.coeffs);
  const std::size_t r = rank(a, n);
  if (r == 0) {
    if (closed.satisfied_by(RVec(n))) out.push_back(RVec(n));
    return out;
  }
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    RMatrix sub;
    for (auto i : idx) sub.push_back(a[i]);
    if (rank(sub, n) != r) continue;
    auto x = solve_rows(closed, idx);
    if (x && closed.satisfied_by(*x)) out.push_back(std::move(*x));
  } while (next_subset(idx, m));
  return out;
}

ConstraintSystem closure_of(const ConstraintSystem& sys) {
  ConstraintSystem out(sys.dim());
  for (auto c : sys.constraints()) {
    c.rel = Rel::GE;
    out.add(std::move(c));
  }
  return out;
}

}  // namespace

bool brute_feasible(const ConstraintSystem& sys) {
  for (const auto& c : sys.constraints()) {
    if (c.is_trivial() && !c.verdict()) return false;
  }
  ConstraintSystem live(sys.dim());
  for (const auto& c : sys.constraints()) {
    if (!c.is_trivial()) live.add(c);
  }
  const ConstraintSystem closed = closure_of(live);
  const auto points = minimal_face_points(closed);
  if (points.empty()) return false;
  // A convex set meets every open halfspace separately iff it meets their
  // intersection (average the witnesses).
  for (const auto& c : live.constraints()) {
    if (c.rel != Rel::GT) continue;
    bool hit = false;
    for (const auto& p : points) {
      if (c.satisfied_by(p)) hit = true;
    }
    if (hit) continue;
    // Unbounded growth along a recession direction?
    ConstraintSystem rec(live.dim());
    for (const auto& d : closed.constraints()) rec.add_ge(RVec(d.coeffs), Rat(0));
    rec.add_ge(RVec(c.coeffs), Rat(1));
    if (minimal_face_points(rec).empty()) return false;
  }
  return true;
}

ConstraintSystem rows_ge(std::size_t n, const std::vector<std::vector<long>>& rows) {
  ConstraintSystem sys(n);
  for (const auto& r : rows) {
    RVec c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = r[k];
    sys.add_ge(c, Rat(r[n]));
  }
  return sys;
}

ConstraintSystem example1() { return rows_ge(4, {{1, 0, 0, 0, 0}, {-3, 1, 1, 1, 0}}); }
ConstraintSystem example2() { return rows_ge(4, {{-3, 1, 1, 1, 0}, {-1, 0, 0, 0, 0}}); }

ConstraintSystem cube(std::size_t n) {
  ConstraintSystem sys(n);
  for (std::size_t j = 0; j < n; ++j) {
    sys.add_ge(unit_vector(n, j), Rat(-1));
    sys.add_ge(-unit_vector(n, j), Rat(-1));
  }
  return sys;
}

ConstraintSystem halfspace(const RVec& nu) {
  ConstraintSystem sys(nu.dim());
  sys.add_ge(nu, Rat(0));
  return sys;
}

TwoVarSystem random_2vpi(Rng& rng, std::size_t n, std::size_t m, bool strict, bool homogeneous) {
  std::vector<TwoVarIneq> out;
  while (out.size() < m) {
    const auto i = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n)));
    const long a = rng.uniform(-2, 2);
    long b = rng.uniform(-2, 2);
    if (a == 0 || j == i) continue;
    if (b == 0) j = 0;
    if (j == 0) b = 0;
    const Rel rel = strict && rng.coin() ? Rel::GT : Rel::GE;
    const long c = homogeneous ? 0 : rng.uniform(-2, 2);
    out.push_back(TwoVarIneq::make(i, Rat(a), j, Rat(b), rel, Rat(c)));
  }
  return TwoVarSystem(n, std::move(out));
}

namespace {

AffineAtom random_atom(Rng& rng, std::size_t n, const Rat& lambda, long b_lo, long b_hi) {
  AffineAtom a{RVec(n - 1), Rat(rng.uniform(b_lo, b_hi))};
  Rat budget = lambda;
  for (auto& w : a.w) {
    // Split the remaining l1 budget at random.
    const Rat mag = budget * Rat(rng.uniform(0, 4), 4);
    w = rng.coin() ? mag : -mag;
    budget -= mag;
  }
  return a;
}

BoundFunc random_bound(Rng& rng, std::size_t n, const Rat& lambda, BoundKind kind) {
  BoundFunc f{kind, {}, lambda};
  const long groups = rng.uniform(1, 2);
  for (long g = 0; g < groups; ++g) {
    std::vector<AffineAtom> group;
    const long atoms = rng.uniform(1, 2);
    for (long k = 0; k < atoms; ++k) {
      group.push_back(kind == BoundKind::Lower ? random_atom(rng, n, lambda, -4, -1) : random_atom(rng, n, lambda, 1, 4));
    }
    f.groups.push_back(std::move(group));
  }
  return f;
}

}  // namespace

BoxConstraintSet random_box_set(Rng& rng, std::size_t n, const Rat& lambda) {
  for (;;) {
    std::vector<CoordBounds> coords;
    for (std::size_t i = 0; i < n; ++i) {
      const long shape = rng.uniform(0, 3);
      CoordBounds cb{i, std::nullopt, std::nullopt};
      if (shape != 1) cb.lower = random_bound(rng, n, lambda, BoundKind::Lower);
      if (shape != 2) cb.upper = random_bound(rng, n, lambda, BoundKind::Upper);
      coords.push_back(std::move(cb));
    }
    try {
      return BoxConstraintSet(n, std::move(coords));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundsCrossed) throw;
    }
  }
}

SignedPerm random_signed_perm(Rng& rng, std::size_t n) {
  SignedPerm s;
  s.perm.resize(n);
  std::iota(s.perm.begin(), s.perm.end(), 0);
  for (std::size_t k = n; k > 1; --k) std::swap(s.perm[k - 1], s.perm[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(k) - 1))]);
  for (std::size_t k = 0; k < n; ++k) s.signs.push_back(rng.coin() ? 1 : -1);
  return s;
}

ConstraintSystem transform(const ConstraintSystem& sys, const SignedPerm& s) {
  ConstraintSystem out(sys.dim());
  for (const auto& c : sys.constraints()) {
    LinConstraint t = c;
    t.coeffs = apply_signed_permutation(RVec(c.coeffs), s.perm, s.signs).entries();
    out.add(std::move(t));
  }
  return out;
}

}  // namespace hcx::testing
