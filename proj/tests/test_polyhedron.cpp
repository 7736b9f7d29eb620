#include <doctest.h>

#include <algorithm>

#include "hcx/error.hpp"
#include "hcx/polyhedron.hpp"
#include "support.hpp"

using namespace hcx;
using namespace hcx::testing;

namespace {

ConeSystem cone(std::size_t n, const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<long>> full;
  for (auto r : rows) {
    r.push_back(0);
    full.push_back(r);
  }
  return ConeSystem(rows_ge(n, full));
}

// C_n = {x_n >= |x_i|}; C_n^1 = {x_n >= 2|x_i|}.
ConeSystem sector(std::size_t n, long scale, bool drop_second = false) {
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (drop_second && i == n - 2) continue;
    for (long s : {1L, -1L}) {
      std::vector<long> r(n, 0);
      r[i] = s * scale;
      r[n - 1] = 1;
      rows.push_back(r);
    }
  }
  return cone(n, rows);
}

bool in_c3(const RVec& x) { return x[2] >= abs(x[0]) && x[2] >= abs(x[1]); }

}  // namespace

TEST_CASE("cube facets") {
  CHECK(cube_facets(1).size() == 2);
  CHECK(cube_facets(2).size() == 4);
  const auto f4 = cube_facets(4);
  CHECK(f4.size() == 8);
  CHECK(std::is_sorted(f4.begin(), f4.end()));
  CHECK(to_string(f4[0]) == "+x1");
  CHECK(to_string(f4[1]) == "-x1");
}

TEST_CASE("polyhedron construction") {
  ConstraintSystem empty(1);
  empty.add_ge(RVec{1}, Rat(1));
  empty.add_ge(RVec{-1}, Rat(0));
  CHECK_THROWS_AS(HPolyhedron{empty}, Error);
  ConstraintSystem strict(1);
  strict.add_gt(RVec{1}, Rat(1));
  CHECK_THROWS_AS(HPolyhedron{strict}, Error);
  CHECK_THROWS_AS(ConeSystem(rows_ge(1, {{1, 1}})), Error);
  const HPolyhedron p(example1());
  CHECK(p.full_dimensional());
}

TEST_CASE("face enumeration") {
  const HPolyhedron sq(cube(2));
  const auto faces = enumerate_faces(sq);
  CHECK(faces.size() == 8);
  CHECK(std::count_if(faces.begin(), faces.end(), [](const FaceDesc& f) { return f.dim_face == 1; }) == 4);
  CHECK(std::count_if(faces.begin(), faces.end(), [](const FaceDesc& f) { return f.dim_face == 0; }) == 4);
  CHECK(minimal_faces(faces).size() == 4);

  const HPolyhedron h(rows_ge(2, {{1, 0, 0}}));
  const auto hf = enumerate_faces(h);
  REQUIRE(hf.size() == 1);
  CHECK(hf[0].dim_face == 1);

  const HPolyhedron e1(example1());
  const auto ef = enumerate_faces(e1);
  REQUIRE(ef.size() == 3);
  const auto mins = minimal_faces(ef);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].active == std::vector<std::size_t>{0, 1});
  CHECK(mins[0].dim_face == 2);

  // Redundant duplicates collapse onto one face.
  const HPolyhedron dup(rows_ge(2, {{1, 0, 0}, {2, 0, 0}}));
  const auto df = enumerate_faces(dup);
  REQUIRE(df.size() == 1);
  CHECK(df[0].active == std::vector<std::size_t>{0, 1});

  FaceOptions tiny;
  tiny.max_candidates = 3;
  CHECK_THROWS_AS(enumerate_faces(HPolyhedron(cube(3)), tiny), Error);
}

TEST_CASE("tangent cones") {
  const HPolyhedron orthant(rows_ge(2, {{1, 0, 0}, {0, 1, 0}}));
  const auto faces = enumerate_faces(orthant);
  const auto vertex = std::find_if(faces.begin(), faces.end(), [](const FaceDesc& f) { return f.dim_face == 0; });
  REQUIRE(vertex != faces.end());
  const ConeSystem k = tangent_cone_at_face(orthant, *vertex);
  CHECK(k.system().size() == 2);
  CHECK(k.system().satisfied_by(RVec{1, 2}));
  CHECK_FALSE(k.system().satisfied_by(RVec{-1, 2}));

  const HPolyhedron sq(cube(2));
  FaceDesc edge{{0}, 1};  // x1 >= -1 tight
  const ConeSystem ke = tangent_cone_at_face(sq, edge);
  CHECK(ke.system().satisfied_by(RVec{1, -5}));
  CHECK_FALSE(ke.system().satisfied_by(RVec{-1, 0}));

  const HPolyhedron e1(example1());
  const ConeSystem km = tangent_cone_at_face(e1, FaceDesc{{0, 1}, 2});
  CHECK(km.system().size() == 2);
}

TEST_CASE("tangent cones contain P - p for points of the face") {
  Rng rng(8);
  const HPolyhedron p(rows_ge(3, {{1, 0, 0, -1}, {-1, 1, 0, -2}, {0, -1, -1, -4}, {1, 1, 1, -3}}));
  for (const auto& f : enumerate_faces(p)) {
    const ConeSystem k = tangent_cone_at_face(p, f);
    const auto base = sample_point(face_system(p, f.active));
    REQUIRE(base);
    for (int t = 0; t < 20; ++t) {
      ConstraintSystem slab = p.system();
      for (std::size_t j = 0; j < 3; ++j) {
        slab.add_ge(unit_vector(3, j), Rat(rng.uniform(-6, 0)));
        slab.add_ge(-unit_vector(3, j), Rat(-rng.uniform(0, 6)));
      }
      const auto q = sample_point(slab);
      if (!q) continue;
      CHECK(k.system().satisfied_by(*q - *base));
    }
  }
}

TEST_CASE("facet relative interiors") {
  const ConeSystem c2 = sector(2, 1);
  CHECK(facet_relint_meets(c2, {1, 1}));
  CHECK_FALSE(facet_relint_meets(c2, {1, -1}));
  const ConeSystem h111 = cone(3, {{1, 1, 1}});
  CHECK(facet_relint_meets(h111, {2, -1}));
  CHECK(h111.system().satisfied_by(RVec{Rat(3, 5), Rat(3, 5), Rat(-1)}));
  const ConeSystem line = cone(1, {{1}});
  CHECK(facet_relint_meets(line, {0, 1}));
  CHECK_FALSE(facet_relint_meets(line, {0, -1}));
}

TEST_CASE("sector avoidance") {
  const auto he = sector_avoidance(cone(3, {{0, 0, 1}}));
  CHECK(he == std::vector<CubeFacetId>{{2, -1}});
  const auto all_but_top = [](std::size_t n) {
    std::vector<CubeFacetId> out;
    for (const auto& f : cube_facets(n)) {
      if (!(f.j == n - 1 && f.sigma == 1)) out.push_back(f);
    }
    return out;
  };
  CHECK(sector_avoidance(sector(3, 1)) == all_but_top(3));
  CHECK(sector_avoidance(sector(3, 2)) == all_but_top(3));
}

TEST_CASE("sector avoidance is antitone") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<long>> rows;
    for (int r = 0; r < 3; ++r) {
      std::vector<long> row(3);
      for (auto& x : row) x = rng.uniform(-2, 2);
      if (std::all_of(row.begin(), row.end(), [](long x) { return x == 0; })) row[0] = 1;
      rows.push_back(row);
    }
    const auto big = sector_avoidance(cone(3, rows));
    rows.pop_back();
    const auto small = sector_avoidance(cone(3, rows));
    for (const auto& f : small) CHECK(std::find(big.begin(), big.end(), f) != big.end());
  }
}

TEST_CASE("membership in K_C") {
  const ConeSystem c2 = sector(2, 2);
  CHECK(kc_contains(c2, RVec{1, 1}));
  CHECK_FALSE(kc_contains(c2, RVec{1, 0}));
  CHECK(kc_contains(c2, RVec{0, 0}));
  CHECK(kc_contains(cone(3, {{1, 1, 1}}), RVec{0, 0, 0}));
  CHECK_THROWS_AS(kc_contains(cone(2, {{1, 0}, {-1, 0}}), RVec{0, 0}), Error);

  Rng rng(99);
  const ConeSystem c3e = sector(3, 2);
  const ConeSystem c3e_line = sector(3, 2, true);
  for (int t = 0; t < 100; ++t) {
    RVec x(3);
    for (auto& v : x) v = rng.rational(-3, 3, 2);
    CHECK(kc_contains(c3e, x) == in_c3(x));
    RVec y = x;
    y[1] = 0;
    CHECK(kc_contains(c3e_line, x) == in_c3(y));
  }
}

TEST_CASE("C lies inside K_C and K_C absorbs apex directions") {
  Rng rng(123);
  for (int t = 0; t < 15; ++t) {
    std::vector<std::vector<long>> rows;
    for (int r = 0; r < 2; ++r) {
      std::vector<long> row(3);
      for (auto& x : row) x = rng.uniform(-2, 2);
      row[2] = rng.uniform(1, 2);
      rows.push_back(row);
    }
    const ConeSystem c = cone(3, rows);
    if (!c.full_dimensional()) continue;
    const auto apex = lineality_basis(c.system());
    for (int s = 0; s < 5; ++s) {
      ConstraintSystem slab = c.system();
      for (std::size_t j = 0; j < 3; ++j) {
        slab.add_ge(unit_vector(3, j), Rat(rng.uniform(-4, 0)));
        slab.add_ge(-unit_vector(3, j), Rat(-rng.uniform(0, 4)));
      }
      const auto x = sample_point(slab);
      REQUIRE(x);
      CHECK(kc_contains(c, *x));
      RVec z(3);
      for (auto& v : z) v = rng.rational(-3, 3, 3);
      RVec shifted = z;
      for (const auto& a : apex) shifted += a * Rat(rng.uniform(-3, 3));
      CHECK(kc_contains(c, z) == kc_contains(c, shifted));
    }
  }
}

TEST_CASE("cone queries commute with signed permutations") {
  Rng rng(4);
  const ConeSystem base = sector(3, 2);
  for (int t = 0; t < 10; ++t) {
    const SignedPerm s = random_signed_perm(rng, 3);
    const ConeSystem img(transform(base.system(), s));
    for (int k = 0; k < 10; ++k) {
      RVec x(3);
      for (auto& v : x) v = rng.rational(-2, 2, 2);
      CHECK(kc_contains(base, x) == kc_contains(img, apply_signed_permutation(x, s.perm, s.signs)));
    }
  }
}
