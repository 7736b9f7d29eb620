#include "hcx/retraction.hpp"

#include <algorithm>
#include <set>

namespace hcx {

Rat AffineAtom::eval(const RVec& x_hat) const { return dot(w.span(), x_hat.span()) + b; }

Rat BoundFunc::eval(const RVec& x_hat) const {
  std::optional<Rat> out;
  for (const auto& group : groups) {
    std::optional<Rat> inner;
    for (const auto& atom : group) {
      const Rat v = atom.eval(x_hat);
      if (!inner) inner = v;
      else inner = kind == BoundKind::Lower ? min(*inner, v) : max(*inner, v);
    }
    if (!out) out = *inner;
    else out = kind == BoundKind::Lower ? max(*out, *inner) : min(*out, *inner);
  }
  return *out;
}

RVec hat(const RVec& x, std::size_t i) {
  std::vector<Rat> out;
  out.reserve(x.dim() - 1);
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (k != i) out.push_back(x[k]);
  }
  return RVec(std::move(out));
}

Rat lipschitz_bound(const BoundFunc& f) {
  Rat best(0);
  for (const auto& group : f.groups) {
    for (const auto& atom : group) best = max(best, norms(atom.w).l1);
  }
  if (best > f.lambda) {
    throw Error(ErrorCode::DeclaredBoundViolated,
                "atom with Lipschitz constant " + best.str() + " exceeds declared lambda " + f.lambda.str());
  }
  return best;
}

namespace {

void check_shape(const BoundFunc& f, std::size_t dim) {
  if (f.groups.empty()) throw Error(ErrorCode::InvalidArgument, "bound function without atoms");
  for (const auto& group : f.groups) {
    if (group.empty()) throw Error(ErrorCode::InvalidArgument, "empty atom group");
    for (const auto& atom : group) {
      if (atom.w.dim() != dim - 1) {
        throw Error(ErrorCode::DimensionMismatch, "atom weight needs " + std::to_string(dim - 1) + " entries");
      }
    }
  }
  if (f.lambda.sign() < 0 || f.lambda > Rat(1)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  }
  lipschitz_bound(f);
}

// Is there x_hat with a(x_hat) > b(x_hat) for all a in g, b in h?
bool groups_cross(const std::vector<AffineAtom>& g, const std::vector<AffineAtom>& h, std::size_t dim,
                  const FeasibilityOptions& opts) {
  ConstraintSystem sys(dim);
  for (const auto& a : g) {
    for (const auto& b : h) {
      LinConstraint c{(a.w - b.w).entries(), Rel::GT, b.b - a.b};
      if (c.is_trivial()) {
        if (!c.verdict()) return false;
        continue;
      }
      sys.add(std::move(c));
    }
  }
  if (sys.size() == 0) return true;
  return is_feasible(sys, opts);
}

}  // namespace

BoxConstraintSet::BoxConstraintSet(std::size_t dim, std::vector<CoordBounds> coords, const FeasibilityOptions& opts)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  std::set<std::size_t> seen;
  for (auto& cb : coords_) {
    if (cb.i >= dim_) throw Error(ErrorCode::IndexOutOfRange, "bound on coordinate " + std::to_string(cb.i + 1));
    if (!seen.insert(cb.i).second) {
      throw Error(ErrorCode::InvalidArgument, "coordinate " + std::to_string(cb.i + 1) + " bounded twice");
    }
    if (cb.lower) {
      cb.lower->kind = BoundKind::Lower;
      check_shape(*cb.lower, dim_);
    }
    if (cb.upper) {
      cb.upper->kind = BoundKind::Upper;
      check_shape(*cb.upper, dim_);
    }
    if (cb.lower && cb.upper) {
      for (const auto& g : cb.lower->groups) {
        for (const auto& h : cb.upper->groups) {
          if (groups_cross(g, h, dim_ - 1, opts)) {
            throw Error(ErrorCode::BoundsCrossed,
                        "lower bound exceeds upper bound somewhere for x" + std::to_string(cb.i + 1));
          }
        }
      }
    }
  }
}

const CoordBounds* BoxConstraintSet::find(std::size_t i) const {
  for (const auto& cb : coords_) {
    if (cb.i == i) return &cb;
  }
  return nullptr;
}

Rat BoxConstraintSet::lambda() const {
  Rat out(0);
  for (const auto& cb : coords_) {
    if (cb.lower) out = max(out, cb.lower->lambda);
    if (cb.upper) out = max(out, cb.upper->lambda);
  }
  return out;
}

std::vector<std::size_t> BoxConstraintSet::default_order() const {
  std::vector<std::size_t> out;
  for (const auto& cb : coords_) out.push_back(cb.i);
  std::sort(out.begin(), out.end());
  return out;
}

bool BoxConstraintSet::contains(const RVec& x, const Rat& tol) const {
  if (x.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from Q");
  for (const auto& cb : coords_) {
    const RVec xh = hat(x, cb.i);
    if (cb.lower && x[cb.i] < cb.lower->eval(xh) - tol) return false;
    if (cb.upper && x[cb.i] > cb.upper->eval(xh) + tol) return false;
  }
  return true;
}

RVec clamp_step(const BoxConstraintSet& q, std::size_t i, const RVec& x) {
  if (x.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from Q");
  const CoordBounds* cb = q.find(i);
  if (!cb) throw Error(ErrorCode::InvalidArgument, "x" + std::to_string(i + 1) + " is not a bounded coordinate");
  const RVec xh = hat(x, i);
  RVec out = x;
  if (cb->lower) out[i] = max(out[i], cb->lower->eval(xh));
  if (cb->upper) out[i] = min(out[i], cb->upper->eval(xh));
  return out;
}

RVec cycle_operator(const BoxConstraintSet& q, const std::vector<std::size_t>& order, const RVec& x) {
  RVec out = x;
  for (std::size_t i : order) out = clamp_step(q, i, out);
  return out;
}

RetractionResult iterate_retraction(const BoxConstraintSet& q, const RVec& x, const std::vector<std::size_t>& order,
                                    const RetractionOptions& opts) {
  {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != q.default_order()) {
      throw Error(ErrorCode::InvalidArgument, "clamp order must list every bounded coordinate once");
    }
  }
  RetractionResult res{x, {}};
  for (std::size_t m = 0; m < opts.max_iter; ++m) {
    RVec next = cycle_operator(q, order, res.point);
    const Rat delta = linf_distance(next, res.point);
    res.trace.push_back(delta);
    res.point = std::move(next);
    if (delta <= opts.tol) return res;
  }
  throw MaxIterError("no convergence after " + std::to_string(opts.max_iter) + " iterations", std::move(res));
}

bool trace_contracts(const std::vector<Rat>& trace, const Rat& lambda) {
  for (std::size_t m = 0; m + 1 < trace.size(); ++m) {
    if (trace[m + 1] > lambda * trace[m]) return false;
  }
  return true;
}

BoxConstraintSet rescale_bounds(const BoxConstraintSet& q, const Rat& r, std::size_t k,
                                const FeasibilityOptions& opts) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (r.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  const Rat lam = Rat(1) - Rat(1, static_cast<long>(k));
  auto transform = [&](const std::optional<BoundFunc>& f) -> std::optional<BoundFunc> {
    if (!f) return std::nullopt;
    BoundFunc out = *f;
    for (auto& group : out.groups) {
      for (auto& atom : group) {
        atom.w = atom.w * lam;
        atom.b = lam * (atom.b - r) + r;
      }
    }
    out.lambda = lam;
    return out;
  };
  std::vector<CoordBounds> coords;
  for (const auto& cb : q.coords()) coords.push_back({cb.i, transform(cb.lower), transform(cb.upper)});
  return BoxConstraintSet(q.dim(), std::move(coords), opts);
}

RVec example2_retraction(const RVec& x) {
  if (x.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "example 2 retraction acts on 4 coordinates");
  RVec out = x;
  out[0] = min(min(x[0], Rat(0)), (x[1] + x[2] + x[3]) / Rat(3));
  return out;
}

}  // namespace hcx
