#include "hcx/feasibility.hpp"

#include <algorithm>
#include <map>

#include "hcx/error.hpp"
#include "hcx/linalg.hpp"

namespace hcx {

const char* rel_symbol(Rel r) { return r == Rel::GT ? ">" : ">="; }

LinConstraint LinConstraint::make(const RVec& coeffs, Rel rel, const Rat& rhs) {
  if (coeffs.dim() == 0) throw Error(ErrorCode::DimensionMismatch, "constraint without coefficients");
  if (coeffs.is_zero()) {
    throw Error(ErrorCode::TrivialInequality, "constraint with all-zero coefficients");
  }
  return LinConstraint{coeffs.entries(), rel, rhs};
}

bool LinConstraint::is_trivial() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& r) { return r.is_zero(); });
}

bool LinConstraint::verdict() const {
  return rel == Rel::GT ? rhs.sign() < 0 : rhs.sign() <= 0;
}

bool LinConstraint::satisfied_by(const RVec& x) const {
  const Rat lhs = dot(coeffs, x.span());
  return rel == Rel::GT ? lhs > rhs : lhs >= rhs;
}

LinConstraint LinConstraint::negated() const {
  LinConstraint out;
  out.coeffs.reserve(coeffs.size());
  for (const auto& c : coeffs) out.coeffs.push_back(-c);
  out.rhs = -rhs;
  out.rel = rel == Rel::GE ? Rel::GT : Rel::GE;
  return out;
}

std::string LinConstraint::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ' ';
    out += coeffs[i].str();
  }
  out += ' ';
  out += rel_symbol(rel);
  out += ' ';
  out += rhs.str();
  return out;
}

ConstraintSystem::ConstraintSystem(std::size_t dim, std::vector<LinConstraint> constraints) : dim_(dim) {
  for (auto& c : constraints) add(std::move(c));
}

void ConstraintSystem::add(LinConstraint c) {
  if (c.coeffs.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "constraint has " + std::to_string(c.coeffs.size()) +
                                                  " coefficients, system dimension is " + std::to_string(dim_));
  }
  constraints_.push_back(std::move(c));
}

void ConstraintSystem::add_eq(const RVec& coeffs, const Rat& rhs) {
  add_ge(coeffs, rhs);
  add_ge(-coeffs, -rhs);
}

void ConstraintSystem::append(const ConstraintSystem& other) {
  for (const auto& c : other.constraints_) add(c);
}

bool ConstraintSystem::satisfied_by(const RVec& x) const {
  if (x.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from system");
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const LinConstraint& c) { return c.satisfied_by(x); });
}

bool ConstraintSystem::all_closed() const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [](const LinConstraint& c) { return c.rel == Rel::GE; });
}

bool ConstraintSystem::homogeneous() const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [](const LinConstraint& c) { return c.rhs.is_zero(); });
}

namespace {

// Scales a row by a positive factor so that its coefficients are coprime
// integers. Verdict rows get rhs in {-1, 0, 1}.
void normalize(LinConstraint& c) {
  mpz_class lcm_den = 1;
  bool any = false;
  for (const auto& a : c.coeffs) {
    if (a.is_zero()) continue;
    any = true;
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), a.den().get_mpz_t());
  }
  if (!any) {
    c.rhs = c.rhs.sign();
    return;
  }
  mpz_class g = 0;
  for (const auto& a : c.coeffs) {
    if (a.is_zero()) continue;
    const mpz_class scaled = a.num() * (lcm_den / a.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  const Rat factor(mpq_class(lcm_den, g));
  if (factor == Rat(1)) return;
  for (auto& a : c.coeffs) {
    if (!a.is_zero()) a *= factor;
  }
  c.rhs *= factor;
}

// Deduplicating row store: rows with identical normalized coefficients keep
// only the tightest right-hand side (GT wins ties).
class RowSet {
 public:
  // Returns false if a false verdict was inserted.
  bool insert(LinConstraint c) {
    normalize(c);
    if (c.is_trivial()) {
      if (c.verdict()) return true;
      has_false_ = true;
    }
    auto [it, fresh] = index_.try_emplace(c.coeffs, rows_.size());
    if (fresh) {
      rows_.push_back(std::move(c));
    } else {
      LinConstraint& cur = rows_[it->second];
      if (c.rhs > cur.rhs || (c.rhs == cur.rhs && c.rel == Rel::GT)) {
        cur.rhs = c.rhs;
        cur.rel = c.rel;
      }
    }
    return !has_false_;
  }

  bool has_false() const { return has_false_; }
  std::size_t size() const { return rows_.size(); }
  std::vector<LinConstraint> take() { return std::move(rows_); }

 private:
  std::map<std::vector<Rat>, std::size_t> index_;
  std::vector<LinConstraint> rows_;
  bool has_false_ = false;
};

[[noreturn]] void resource_cap(std::size_t cap) {
  throw Error(ErrorCode::ResourceCap,
              "Fourier-Motzkin elimination exceeded " + std::to_string(cap) + " intermediate constraints");
}

// One elimination step on full-width rows; column k is zero in the output.
std::vector<LinConstraint> eliminate_column(const std::vector<LinConstraint>& rows, std::size_t k,
                                            std::size_t cap, bool& infeasible) {
  std::vector<const LinConstraint*> pos, neg;
  RowSet out;
  for (const auto& r : rows) {
    const int s = r.coeffs[k].sign();
    if (s > 0) {
      pos.push_back(&r);
    } else if (s < 0) {
      neg.push_back(&r);
    } else {
      out.insert(r);
    }
  }
  for (const auto* p : pos) {
    for (const auto* q : neg) {
      const Rat wp = -q->coeffs[k];  // > 0
      const Rat wq = p->coeffs[k];   // > 0
      LinConstraint c;
      c.coeffs.resize(p->coeffs.size());
      for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
        if (j == k) continue;
        if (p->coeffs[j].is_zero() && q->coeffs[j].is_zero()) continue;
        c.coeffs[j] = wp * p->coeffs[j] + wq * q->coeffs[j];
      }
      c.rhs = wp * p->rhs + wq * q->rhs;
      c.rel = strictest(p->rel, q->rel);
      out.insert(std::move(c));
      if (out.size() > cap) resource_cap(cap);
    }
  }
  infeasible = out.has_false();
  return out.take();
}

std::size_t pick_variable(const std::vector<LinConstraint>& rows, const std::vector<bool>& done) {
  std::size_t best = done.size();
  std::size_t best_score = 0;
  for (std::size_t k = 0; k < done.size(); ++k) {
    if (done[k]) continue;
    std::size_t np = 0, nn = 0;
    for (const auto& r : rows) {
      const int s = r.coeffs[k].sign();
      np += s > 0;
      nn += s < 0;
    }
    const std::size_t score = np * nn;
    if (best == done.size() || score < best_score) {
      best = k;
      best_score = score;
    }
  }
  return best;
}

struct Tower {
  std::vector<std::vector<LinConstraint>> stages;  // stages[s] is the system before eliminating order[s]
  std::vector<std::size_t> order;
  bool feasible = false;
};

Tower run_elimination(const ConstraintSystem& sys, const FeasibilityOptions& opts) {
  Tower t;
  RowSet init;
  for (const auto& c : sys.constraints()) init.insert(c);
  if (init.has_false()) return t;
  std::vector<LinConstraint> cur = init.take();
  if (cur.size() > opts.max_constraints) resource_cap(opts.max_constraints);
  std::vector<bool> done(sys.dim(), false);
  for (std::size_t step = 0; step < sys.dim(); ++step) {
    const std::size_t k = pick_variable(cur, done);
    done[k] = true;
    bool infeasible = false;
    std::vector<LinConstraint> next = eliminate_column(cur, k, opts.max_constraints, infeasible);
    t.stages.push_back(std::move(cur));
    t.order.push_back(k);
    if (infeasible) return t;
    cur = std::move(next);
  }
  // Everything left is a true verdict (false ones abort above).
  t.feasible = true;
  return t;
}

}  // namespace

ConstraintSystem eliminate_variable(const ConstraintSystem& sys, std::size_t k, const FeasibilityOptions& opts) {
  if (k >= sys.dim()) throw Error(ErrorCode::IndexOutOfRange, "elimination index out of range");
  RowSet init;
  for (const auto& c : sys.constraints()) init.insert(c);
  bool infeasible = false;
  std::vector<LinConstraint> rows = eliminate_column(init.take(), k, opts.max_constraints, infeasible);
  ConstraintSystem out(sys.dim() - 1);
  for (auto& r : rows) {
    r.coeffs.erase(r.coeffs.begin() + static_cast<std::ptrdiff_t>(k));
    out.add(std::move(r));
  }
  return out;
}

bool is_feasible(const ConstraintSystem& sys, const FeasibilityOptions& opts) {
  return run_elimination(sys, opts).feasible;
}

std::optional<RVec> sample_point(const ConstraintSystem& sys, const FeasibilityOptions& opts) {
  const Tower t = run_elimination(sys, opts);
  if (!t.feasible) return std::nullopt;
  RVec x(sys.dim());
  for (std::size_t s = t.stages.size(); s-- > 0;) {
    const std::size_t k = t.order[s];
    // The tower guarantees a non-empty interval; equal bounds are both closed.
    std::optional<Rat> lo, hi;
    for (const auto& r : t.stages[s]) {
      const Rat& a = r.coeffs[k];
      if (a.is_zero()) continue;
      Rat rest;
      for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
        if (j != k && !r.coeffs[j].is_zero()) rest += r.coeffs[j] * x[j];
      }
      const Rat bound = (r.rhs - rest) / a;
      if (a.sign() > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi) {
      x[k] = (*lo == *hi) ? *lo : (*lo + *hi) / Rat(2);
    } else if (lo) {
      x[k] = *lo + Rat(1);
    } else if (hi) {
      x[k] = *hi - Rat(1);
    } else {
      x[k] = 0;
    }
  }
  return x;
}

ImpliedEqualities implied_equalities(const ConstraintSystem& sys, const FeasibilityOptions& opts) {
  if (!sys.all_closed()) {
    throw Error(ErrorCode::StrictInequalityUnsupported, "implied_equalities needs a closed system");
  }
  if (!is_feasible(sys, opts)) throw Error(ErrorCode::InfeasibleInput, "system is infeasible");
  ImpliedEqualities out;
  RMatrix rows;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    // Tight on the whole set iff the row can never hold strictly.
    ConstraintSystem probe = sys;
    LinConstraint strict = sys[i];
    strict.rel = Rel::GT;
    probe.add(std::move(strict));
    if (!is_feasible(probe, opts)) {
      out.tight.push_back(i);
      rows.emplace_back(sys[i].coeffs);
    }
  }
  out.dim_aff = sys.dim() - rank(rows, sys.dim());
  return out;
}

std::vector<RVec> lineality_basis(const ConstraintSystem& cone) {
  if (!cone.homogeneous()) throw Error(ErrorCode::NotACone, "lineality_basis needs a homogeneous system");
  RMatrix rows;
  for (const auto& c : cone.constraints()) rows.emplace_back(c.coeffs);
  return nullspace_basis(rows, cone.dim());
}

}  // namespace hcx
