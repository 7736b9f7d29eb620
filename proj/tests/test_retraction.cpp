#include <doctest.h>

#include "hcx/error.hpp"
#include "hcx/retraction.hpp"
#include "support.hpp"

using namespace hcx;
using namespace hcx::testing;

namespace {

BoundFunc constant(BoundKind kind, std::size_t n, const Rat& value, const Rat& lambda = Rat(0)) {
  return BoundFunc{kind, {{AffineAtom{RVec(n - 1), value}}}, lambda};
}

// x1 in [x2/2 - 1, x2/2 + 1], x2 in [x1/2 - 1, x1/2 + 1].
BoxConstraintSet q2d() {
  const Rat h(1, 2);
  std::vector<CoordBounds> coords;
  for (std::size_t i = 0; i < 2; ++i) {
    coords.push_back({i, BoundFunc{BoundKind::Lower, {{AffineAtom{RVec{h}, Rat(-1)}}}, h},
                      BoundFunc{BoundKind::Upper, {{AffineAtom{RVec{h}, Rat(1)}}}, h}});
  }
  return BoxConstraintSet(2, std::move(coords));
}

RVec random_point(Rng& rng, std::size_t n, long range) {
  RVec x(n);
  for (auto& v : x) v = rng.rational(-range, range, 4);
  return x;
}

}  // namespace

TEST_CASE("lipschitz bounds") {
  const Rat t(1, 3);
  CHECK(lipschitz_bound(BoundFunc{BoundKind::Upper, {{AffineAtom{RVec{t, t, t}, Rat(0)}}}, Rat(1)}) == 1);
  CHECK(lipschitz_bound(BoundFunc{BoundKind::Lower, {{AffineAtom{RVec{Rat(1, 2), 0}, Rat(0)}}}, Rat(1)}) == Rat(1, 2));
  CHECK(lipschitz_bound(BoundFunc{BoundKind::Lower,
                                  {{AffineAtom{RVec{Rat(1, 2), 0}, Rat(0)}, AffineAtom{RVec{Rat(1, 4), Rat(-1, 2)}, Rat(0)}}},
                                  Rat(1)}) == Rat(3, 4));
  CHECK_THROWS_AS(lipschitz_bound(BoundFunc{BoundKind::Lower, {{AffineAtom{RVec{1, 0}, Rat(0)}}}, Rat(1, 2)}), Error);
}

TEST_CASE("bound evaluation uses max-min and min-max") {
  const BoundFunc lower{BoundKind::Lower,
                        {{AffineAtom{RVec{1}, Rat(0)}, AffineAtom{RVec{-1}, Rat(0)}}, {AffineAtom{RVec{0}, Rat(-5)}}},
                        Rat(1)};
  CHECK(lower.eval(RVec{3}) == -3);  // max(min(3, -3), -5)
  CHECK(lower.eval(RVec{10}) == -5);
  const BoundFunc upper{BoundKind::Upper, {{AffineAtom{RVec{1}, Rat(0)}, AffineAtom{RVec{-1}, Rat(0)}}}, Rat(1)};
  CHECK(upper.eval(RVec{-2}) == 2);
}

TEST_CASE("box constraint validation") {
  CHECK_THROWS_AS(BoxConstraintSet(2, {{0, constant(BoundKind::Lower, 2, Rat(1)), constant(BoundKind::Upper, 2, Rat(0))}}),
                  Error);
  // x1 >= x2 and x1 <= x2/2 cross for x2 > 0.
  CHECK_THROWS_AS(BoxConstraintSet(2, {{0, BoundFunc{BoundKind::Lower, {{AffineAtom{RVec{1}, Rat(0)}}}, Rat(1)},
                                        BoundFunc{BoundKind::Upper, {{AffineAtom{RVec{Rat(1, 2)}, Rat(0)}}}, Rat(1)}}}),
                  Error);
  CHECK_THROWS_AS(BoxConstraintSet(2, {{2, constant(BoundKind::Lower, 2, Rat(0)), std::nullopt}}), Error);
  CHECK_THROWS_AS(BoxConstraintSet(2, {{0, constant(BoundKind::Lower, 3, Rat(0)), std::nullopt}}), Error);
  CHECK_THROWS_AS(BoxConstraintSet(2, {{0, constant(BoundKind::Lower, 2, Rat(0), Rat(2)), std::nullopt}}), Error);
  CHECK_THROWS_AS(BoxConstraintSet(2, {{0, constant(BoundKind::Lower, 2, Rat(0)), std::nullopt},
                                       {0, std::nullopt, constant(BoundKind::Upper, 2, Rat(0))}}),
                  Error);
  // Touching bounds are fine.
  CHECK_NOTHROW(BoxConstraintSet(1, {{0, constant(BoundKind::Lower, 1, Rat(1)), constant(BoundKind::Upper, 1, Rat(1))}}));
}

TEST_CASE("clamp steps") {
  const BoxConstraintSet box(2, {{1, constant(BoundKind::Lower, 2, Rat(0)), constant(BoundKind::Upper, 2, Rat(1))}});
  CHECK(clamp_step(box, 1, RVec{5, 7}) == RVec{5, 1});
  const BoxConstraintSet half(2, {{1, BoundFunc{BoundKind::Lower, {{AffineAtom{RVec{-1}, Rat(0)}}}, Rat(1)}, std::nullopt}});
  CHECK(clamp_step(half, 1, RVec{2, -5}) == RVec{2, -2});
  CHECK(clamp_step(q2d(), 0, RVec{4, 0}) == RVec{1, 0});
  CHECK_THROWS_AS(clamp_step(box, 0, RVec{5, 7}), Error);
}

TEST_CASE("cycle operator") {
  const BoxConstraintSet q = q2d();
  const RVec y = cycle_operator(q, {0, 1}, RVec{4, 0});
  CHECK(y == RVec{1, 0});
  CHECK(q.contains(y));
  CHECK(cycle_operator(q, {0, 1}, RVec{0, 0}) == RVec{0, 0});
  const BoxConstraintSet none(2, {});
  CHECK(cycle_operator(none, {}, RVec{3, 4}) == RVec{3, 4});
}

TEST_CASE("fixed-point iteration") {
  const BoxConstraintSet q = q2d();
  const RetractionResult r = iterate_retraction(q, RVec{4, 0}, {0, 1});
  CHECK(r.point == RVec{1, 0});
  CHECK(r.trace == std::vector<Rat>{Rat(3), Rat(0)});

  const RetractionResult in = iterate_retraction(q, RVec{0, 0}, {0, 1});
  CHECK(in.trace == std::vector<Rat>{Rat(0)});

  const RetractionResult far = iterate_retraction(q, RVec{100, -100}, {0, 1});
  CHECK(trace_contracts(far.trace, Rat(1, 2)));
  CHECK(q.contains(far.point, pow2_neg(40)));

  RetractionOptions once;
  once.max_iter = 1;
  try {
    iterate_retraction(q, RVec{100, -100}, {0, 1}, once);
    FAIL("expected MaxIterError");
  } catch (const MaxIterError& e) {
    CHECK(e.code() == ErrorCode::MaxIterExceeded);
    CHECK(e.best().trace.size() == 1);
  }
  CHECK_THROWS_AS(iterate_retraction(q, RVec{0, 0}, {0}), Error);
}

TEST_CASE("retraction properties on random sets") {
  Rng rng(2718);
  for (int t = 0; t < 25; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const Rat lam = t % 2 ? Rat(1, 2) : Rat(1);
    const BoxConstraintSet q = random_box_set(rng, n, lam);
    const auto order = q.default_order();
    for (int k = 0; k < 10; ++k) {
      const RVec x = random_point(rng, n, 10);
      const RVec y = random_point(rng, n, 10);
      CHECK(linf_distance(cycle_operator(q, order, x), cycle_operator(q, order, y)) <= linf_distance(x, y));
      if (lam < Rat(1)) {
        const RetractionResult r = iterate_retraction(q, x, order);
        CHECK(trace_contracts(r.trace, lam));
        CHECK(q.contains(r.point, pow2_neg(40)));
      }
    }
    // Points of Q are fixed exactly.
    for (int k = 0; k < 10; ++k) {
      const RVec x = random_point(rng, n, 10);
      const RVec fx = cycle_operator(q, order, x);
      if (q.contains(fx)) CHECK(cycle_operator(q, order, fx) == fx);
    }
  }
}

TEST_CASE("rescaled bounds") {
  const BoxConstraintSet q = q2d();
  const BoxConstraintSet q1 = rescale_bounds(q, Rat(5), 1);
  CHECK(q1.lambda() == 0);
  CHECK(q1.find(0)->lower->eval(RVec{123}) == 5);
  CHECK(q1.find(0)->upper->eval(RVec{-7}) == 5);

  const BoxConstraintSet q2 = rescale_bounds(q, Rat(2), 2);
  CHECK(q2.lambda() == Rat(1, 2));
  const AffineAtom& a = q2.find(1)->upper->groups[0][0];
  CHECK(a.w == RVec{Rat(1, 4)});
  CHECK(a.b == Rat(3, 2));  // (1 - 2)/2 + 2
  CHECK(lipschitz_bound(*q2.find(1)->upper) == Rat(1, 2) * lipschitz_bound(*q.find(1)->upper));

  CHECK_THROWS_AS(rescale_bounds(q, Rat(0), 2), Error);
  CHECK_THROWS_AS(rescale_bounds(q, Rat(1), 0), Error);

  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const BoxConstraintSet base = random_box_set(rng, 3, Rat(1));
    const auto k = static_cast<std::size_t>(rng.uniform(2, 6));
    const BoxConstraintSet qk = rescale_bounds(base, Rat(10), k);
    CHECK(qk.lambda() == Rat(1) - Rat(1, static_cast<long>(k)));
    const RetractionResult r = iterate_retraction(qk, random_point(rng, 3, 20), qk.default_order());
    CHECK(qk.contains(r.point, pow2_neg(40)));
  }
}

TEST_CASE("closed-form retraction onto P'") {
  CHECK(example2_retraction(RVec{1, 0, 0, 0}) == RVec{0, 0, 0, 0});
  CHECK(example2_retraction(RVec{-1, 2, 2, 2}) == RVec{-1, 2, 2, 2});
  CHECK(example2_retraction(RVec{1, -3, 0, 0}) == RVec{-1, -3, 0, 0});
  CHECK_THROWS_AS(example2_retraction(RVec{1, 2, 3}), Error);
}
