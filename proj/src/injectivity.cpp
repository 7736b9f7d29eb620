#include "hcx/injectivity.hpp"

#include <algorithm>

#include "hcx/error.hpp"
#include "hcx/random.hpp"

namespace hcx {

bool hyperplane_injective(const RVec& nu) {
  if (nu.is_zero()) throw Error(ErrorCode::ZeroVector, "normal vector must be non-zero");
  const Norms n = norms(nu);
  return n.l1 <= Rat(2) * n.linf;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (idx[pos] < n - k + pos) {
      ++idx[pos];
      for (std::size_t q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<SubspaceCertificate> subspace_injective(const std::vector<RVec>& basis) {
  if (basis.empty()) throw Error(ErrorCode::DependentBasis, "subspace basis is empty");
  const std::size_t n = basis.front().dim();
  const std::size_t k = basis.size();
  for (const auto& b : basis) {
    if (b.dim() != n) throw Error(ErrorCode::DimensionMismatch, "basis vectors differ in dimension");
  }
  if (k > n || rank(basis, n) != k) throw Error(ErrorCode::DependentBasis, "basis is linearly dependent");

  std::vector<std::size_t> J(k);
  for (std::size_t l = 0; l < k; ++l) J[l] = l;
  do {
    // x = sum_l t_l b_l restricted to J gives x_J = M^T t.
    RMatrix mt(k, RVec(k));
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t col = 0; col < k; ++col) mt[col][l] = basis[l][J[col]];
    }
    const auto inv = inverse(mt);
    if (!inv) continue;
    SubspaceCertificate cert;
    cert.J = J;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (std::binary_search(J.begin(), J.end(), i)) continue;
      RVec row(k);
      for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t l = 0; l < k; ++l) row[col] += basis[l][i] * (*inv)[l][col];
      }
      if (norms(row).l1 > Rat(1)) ok = false;
      cert.rest.push_back(i);
      cert.coeffs.push_back(std::move(row));
    }
    if (ok) return cert;
  } while (next_combination(J, n));
  return std::nullopt;
}

bool verify_subspace_certificate(const std::vector<RVec>& basis, const SubspaceCertificate& cert) {
  if (basis.empty()) return false;
  const std::size_t n = basis.front().dim();
  if (cert.J.size() != basis.size() || cert.J.size() + cert.rest.size() != n) return false;
  if (rank(basis, n) != basis.size()) return false;
  for (std::size_t r = 0; r < cert.rest.size(); ++r) {
    if (norms(cert.coeffs[r]).l1 > Rat(1)) return false;
    for (const auto& b : basis) {
      Rat rhs;
      for (std::size_t l = 0; l < cert.J.size(); ++l) rhs += cert.coeffs[r][l] * b[cert.J[l]];
      if (b[cert.rest[r]] != rhs) return false;
    }
  }
  // The certificate's subspace has dimension |J| = k and contains the
  // k-dimensional span of the basis, so they coincide.
  return true;
}

std::optional<CubeFacetId> cone_asymmetric_facet(const ConeSystem& k, const FeasibilityOptions& opts) {
  if (!k.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "cone has empty interior");
  for (std::size_t j = 0; j < k.dim(); ++j) {
    const bool plus = facet_relint_meets(k, {j, 1}, opts);
    const bool minus = facet_relint_meets(k, {j, -1}, opts);
    if (plus && !minus) return CubeFacetId{j, 1};
    if (minus && !plus) return CubeFacetId{j, -1};
  }
  return std::nullopt;
}

const char* verdict_name(Verdict v) { return v == Verdict::Injective ? "INJECTIVE" : "NOT_INJECTIVE"; }

InjectivityReport polyhedron_injective(const HPolyhedron& p, const InjectivityOptions& opts) {
  if (!p.full_dimensional()) {
    throw Error(ErrorCode::NotFullDimensional,
                "polyhedron has affine dimension " + std::to_string(p.dim_aff()) + " < " + std::to_string(p.dim()));
  }
  std::vector<FaceDesc> faces = enumerate_faces(p, opts.faces);
  if (opts.minimal_faces_only) faces = minimal_faces(faces);
  InjectivityReport report;
  for (auto& f : faces) {
    const ConeSystem cone = tangent_cone_at_face(p, f);
    auto witness = cone_asymmetric_facet(cone, opts.faces.fm);
    if (!witness && !report.failing_face) {
      report.verdict = Verdict::NotInjective;
      report.failing_face = f;
    }
    report.per_face.push_back({std::move(f), witness});
  }
  return report;
}

bool verify_report(const HPolyhedron& p, const InjectivityReport& report, const FeasibilityOptions& opts) {
  bool all_witnessed = true;
  for (const auto& fc : report.per_face) {
    const ConeSystem cone = tangent_cone_at_face(p, fc.face);
    if (fc.witness) {
      if (!facet_relint_meets(cone, *fc.witness, opts) || facet_relint_meets(cone, fc.witness->opposite(), opts)) {
        return false;
      }
    } else {
      all_witnessed = false;
      // Every facet pair must be symmetric for a face without witness.
      for (std::size_t j = 0; j < p.dim(); ++j) {
        if (facet_relint_meets(cone, {j, 1}, opts) != facet_relint_meets(cone, {j, -1}, opts)) return false;
      }
    }
  }
  if (all_witnessed != (report.verdict == Verdict::Injective)) return false;
  if (report.verdict == Verdict::NotInjective) {
    if (!report.failing_face) return false;
    const bool listed = std::any_of(report.per_face.begin(), report.per_face.end(), [&](const FaceCheck& fc) {
      return fc.face == *report.failing_face && !fc.witness;
    });
    if (!listed) return false;
  }
  return true;
}

BallFamily::BallFamily(std::vector<Ball> balls) : balls_(std::move(balls)) {
  for (const auto& b : balls_) {
    if (b.center.dim() != balls_.front().center.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "ball centers differ in dimension");
    }
    if (b.radius.sign() < 0) throw Error(ErrorCode::InvalidArgument, "negative ball radius");
  }
}

const char* ball_verdict_name(BallVerdict v) {
  switch (v) {
    case BallVerdict::Incompatible: return "INCOMPATIBLE";
    case BallVerdict::Intersects: return "INTERSECTS";
    case BallVerdict::Violates: return "VIOLATES";
  }
  return "?";
}

BallCheck verify_ball_family(const HPolyhedron& p, const BallFamily& fam, const FeasibilityOptions& opts) {
  const std::size_t n = p.dim();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& b = fam.balls()[i];
    if (b.center.dim() != n) throw Error(ErrorCode::DimensionMismatch, "ball center dimension differs from P");
    if (!p.contains(b.center)) {
      throw Error(ErrorCode::CenterOutsideP, "center " + std::to_string(i + 1) + " " + b.center.str() + " is not in P");
    }
  }
  BallCheck out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const auto& a = fam.balls()[i];
      const auto& b = fam.balls()[j];
      if (a.radius + b.radius < linf_distance(a.center, b.center)) {
        out.verdict = BallVerdict::Incompatible;
        out.bad_pair = {i, j};
        return out;
      }
    }
  }
  ConstraintSystem q = p.system();
  if (fam.size() > 0) {
    out.box_lo = RVec(n);
    out.box_hi = RVec(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto& b = fam.balls()[i];
        const Rat lo = b.center[k] - b.radius;
        const Rat hi = b.center[k] + b.radius;
        if (i == 0 || lo > out.box_lo[k]) out.box_lo[k] = lo;
        if (i == 0 || hi < out.box_hi[k]) out.box_hi[k] = hi;
      }
      q.add_ge(unit_vector(n, k), out.box_lo[k]);
      q.add_ge(-unit_vector(n, k), -out.box_hi[k]);
    }
  }
  out.common_point = sample_point(q, opts);
  out.verdict = out.common_point ? BallVerdict::Intersects : BallVerdict::Violates;
  return out;
}

std::vector<Rat> minimal_compatible_radii(const std::vector<RVec>& centers) {
  const std::size_t m = centers.size();
  std::vector<std::vector<Rat>> d(m, std::vector<Rat>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) d[i][j] = d[j][i] = linf_distance(centers[i], centers[j]);
  }
  std::vector<Rat> r(m);
  // Gromov-product start: exact pairwise-tight radii for triangles.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        if (j == i || k == i) continue;
        r[i] = max(r[i], (d[i][j] + d[i][k] - d[j][k]) / Rat(2));
      }
    }
  }
  // Tighten: split any remaining deficit evenly.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Rat deficit = d[i][j] - r[i] - r[j];
      if (deficit.sign() > 0) {
        r[i] += deficit / Rat(2);
        r[j] += deficit / Rat(2);
      }
    }
  }
  // Shrink: each radius down to the smallest value its constraints allow.
  for (std::size_t i = 0; i < m; ++i) {
    Rat need;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) need = max(need, d[i][j] - r[j]);
    }
    r[i] = need;
  }
  return r;
}

namespace {

struct FaceSampler {
  ConstraintSystem sys;
  RVec base;
  std::vector<RVec> directions;
};

RVec sample_on_face(const FaceSampler& f, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    RVec q = f.base;
    const long den = rng.coin() ? 1 : 2;
    for (const auto& d : f.directions) q += d * rng.rational(-3, 3, den);
    if (f.sys.satisfied_by(q)) return q;
  }
  return f.base;
}

}  // namespace

std::optional<BallFamily> search_witness(const HPolyhedron& p, std::size_t trials, std::uint64_t seed,
                                         const FaceOptions& opts) {
  if (!p.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "witness search needs int(P) non-empty");
  const std::size_t n = p.dim();
  std::vector<FaceSampler> samplers;
  for (const auto& f : enumerate_faces(p, opts)) {
    FaceSampler s{face_system(p, f.active), RVec(), {}};
    auto base = sample_point(s.sys, opts.fm);
    if (!base) continue;
    s.base = std::move(*base);
    RMatrix rows;
    for (auto i : f.active) rows.emplace_back(p.system()[i].coeffs);
    s.directions = nullspace_basis(rows, n);
    samplers.push_back(std::move(s));
  }
  if (samplers.empty()) return std::nullopt;  // no boundary

  Rng rng(seed);
  const long lo = n + 1 < 3 ? 2 : 3;
  const long hi = std::max<long>(lo, static_cast<long>(n) + 1);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto m = static_cast<std::size_t>(rng.uniform(lo, hi));
    std::vector<RVec> centers;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& face = samplers[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(samplers.size()) - 1))];
      RVec x = sample_on_face(face, rng);
      if (rng.coin()) {
        const Rat w = rng.rational(0, 1, 4);
        x = x + (sample_on_face(face, rng) - x) * w;
      }
      centers.push_back(std::move(x));
    }
    const std::vector<Rat> radii = minimal_compatible_radii(centers);
    std::vector<Ball> balls;
    for (std::size_t i = 0; i < m; ++i) balls.push_back({centers[i], radii[i]});
    BallFamily fam(std::move(balls));
    if (verify_ball_family(p, fam, opts.fm).verdict == BallVerdict::Violates) return fam;
  }
  return std::nullopt;
}

}  // namespace hcx
