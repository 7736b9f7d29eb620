#include "hcx/cli.hpp"

#include <sstream>

#include "hcx/io.hpp"

namespace hcx {

namespace {

struct Outcome {
  int exit_code = 0;
  Json report;
  std::string text;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

const std::string& single_input(const CommandRequest& req) {
  if (req.inputs.size() != 1) usage(req.command + " expects exactly one input file");
  return req.inputs[0];
}

void unverified(const std::string& what) {
  throw Error(ErrorCode::Discrepancy, "certificate failed re-verification: " + what);
}

InjectivityOptions injectivity_options(const CommandRequest& req) {
  InjectivityOptions o;
  o.minimal_faces_only = req.fast_minimal_faces;
  return o;
}

std::vector<RVec> parse_basis(const std::string& text) {
  std::vector<RVec> out;
  std::istringstream in(text);
  for (std::string row; std::getline(in, row, ';');) {
    if (row.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(RVec::parse(row));
  }
  return out;
}

// Direction space of an affine subspace {x : all rows tight}.
std::vector<RVec> direction_basis(const ConstraintSystem& sys) {
  RMatrix rows;
  for (const auto& c : sys.constraints()) rows.emplace_back(c.coeffs);
  return nullspace_basis(rows, sys.dim());
}

void subspace_outcome(const std::vector<RVec>& basis, std::size_t n, Outcome& o) {
  if (basis.empty() || basis.size() == n) {
    o.report["verdict"] = "INJECTIVE";
    o.report["certificate"] = nullptr;
    o.text += "INJECTIVE (" + std::string(basis.empty() ? "a single point" : "the whole space") + ")\n";
    return;
  }
  const auto cert = subspace_injective(basis);
  if (!cert) {
    o.exit_code = 1;
    o.report["verdict"] = "NOT_INJECTIVE";
    o.report["certificate"] = nullptr;
    o.text += "NOT_INJECTIVE: no coordinate set J gives l1-bounded coefficient rows\n";
    return;
  }
  if (!verify_subspace_certificate(basis, *cert)) unverified("subspace coefficients");
  o.report["verdict"] = "INJECTIVE";
  o.report["certificate"] = subspace_json(*cert);
  o.text += "INJECTIVE\nJ = " + index_json(cert->J).dump() + "\n";
  for (std::size_t r = 0; r < cert->rest.size(); ++r) {
    o.text += "  x" + std::to_string(cert->rest[r] + 1) + " = ";
    for (std::size_t l = 0; l < cert->J.size(); ++l) {
      if (l) o.text += " + ";
      o.text += cert->coeffs[r][l].str() + " x" + std::to_string(cert->J[l] + 1);
    }
    o.text += "\n";
  }
}

std::string face_text(const FaceDesc& f) {
  std::string s = "{";
  for (std::size_t k = 0; k < f.active.size(); ++k) s += (k ? "," : "") + std::to_string(f.active[k] + 1);
  return s + "} (dim " + std::to_string(f.dim_face) + ")";
}

std::string family_text(const BallFamily& fam) {
  std::string s;
  for (const auto& b : fam.balls()) s += "  B(" + b.center.str() + ", " + b.radius.str() + ")\n";
  return s;
}

Outcome run_check(const CommandRequest& req) {
  Outcome o;
  ConstraintSystem sys = parse_sys(read_file(single_input(req)));
  const HPolyhedron p(sys);
  o.report["dim"] = p.dim();
  o.report["dim_aff"] = p.dim_aff();
  if (!p.full_dimensional()) {
    if (p.tight().size() != sys.size()) {
      throw Error(ErrorCode::NotFullDimensional,
                  "polyhedron has affine dimension " + std::to_string(p.dim_aff()) + " < " + std::to_string(p.dim()) +
                      " and is not an affine subspace");
    }
    o.report["route"] = "subspace";
    subspace_outcome(direction_basis(sys), p.dim(), o);
    return o;
  }
  o.report["route"] = "faces";
  const InjectivityReport rep = polyhedron_injective(p, injectivity_options(req));
  if (!verify_report(p, rep)) unverified("per-face cone test");
  const Json rj = report_json(rep);
  o.report["verdict"] = rj["verdict"];
  o.report["faces"] = rj["faces"];
  o.report["failing_face"] = rj["failing_face"];
  o.text += std::string(verdict_name(rep.verdict)) + "\n";
  for (const auto& fc : rep.per_face) {
    o.text += "  face " + face_text(fc.face) + ": " +
              (fc.witness ? "asymmetric facet " + to_string(*fc.witness) : std::string("no asymmetric facet")) + "\n";
  }
  if (rep.verdict == Verdict::NotInjective) {
    o.exit_code = 1;
    o.text += "failing face " + face_text(*rep.failing_face) + "\n";
    if (req.witness) {
      FaceOptions fo;
      const auto fam = search_witness(p, req.trials, req.seed, fo);
      if (fam) {
        const BallCheck bc = verify_ball_family(p, *fam);
        if (bc.verdict != BallVerdict::Violates) unverified("witness ball family");
        o.report["witness"] = {{"balls", ball_family_json(*fam)}, {"check", ball_check_json(bc)}};
        o.text += "witness ball family (pairwise compatible, no common point in P):\n" + family_text(*fam);
      } else {
        o.report["witness"] = nullptr;
        o.text += "no witness family found in " + std::to_string(req.trials) + " trials\n";
      }
    }
  }
  return o;
}

Outcome run_hyperplane(const CommandRequest& req) {
  Outcome o;
  if (!req.vector) usage("hyperplane needs -v");
  const RVec nu = RVec::parse(*req.vector);
  const bool inj = hyperplane_injective(nu);
  const Norms nm = norms(nu);
  o.exit_code = inj ? 0 : 1;
  o.report["normal"] = vec_json(nu);
  o.report["l1"] = nm.l1.str();
  o.report["linf"] = nm.linf.str();
  o.report["verdict"] = inj ? "INJECTIVE" : "NOT_INJECTIVE";
  o.text = std::string(inj ? "INJECTIVE" : "NOT_INJECTIVE") + ": ||nu||_1 = " + nm.l1.str() +
           (inj ? " <= " : " > ") + "2 ||nu||_inf = " + (Rat(2) * nm.linf).str() + "\n";
  return o;
}

Outcome run_subspace(const CommandRequest& req) {
  Outcome o;
  std::vector<RVec> basis;
  std::size_t n = 0;
  if (req.basis) {
    if (!req.inputs.empty()) usage("subspace takes either --basis or a file");
    basis = parse_basis(*req.basis);
    if (basis.empty()) usage("empty basis");
    n = basis.front().dim();
    for (const auto& b : basis) {
      if (b.dim() != n) throw Error(ErrorCode::DimensionMismatch, "basis vectors differ in length");
    }
  } else {
    const ConstraintSystem sys = parse_sys(read_file(single_input(req)));
    if (!sys.homogeneous()) throw Error(ErrorCode::InvalidArgument, "a linear subspace needs right-hand sides 0");
    const HPolyhedron p(sys);
    if (p.tight().size() != sys.size()) throw Error(ErrorCode::InvalidArgument, "the system does not describe a linear subspace");
    basis = direction_basis(sys);
    n = sys.dim();
  }
  o.report["dim"] = n;
  o.report["subspace_dim"] = basis.size();
  subspace_outcome(basis, n, o);
  return o;
}

Outcome run_twovpi_sat(const CommandRequest& req) {
  Outcome o;
  const TwoVarSystem sys = parse_system(read_file(single_input(req)));
  const SatResult res = is_satisfiable(sys);
  o.report["n"] = sys.n();
  o.report["inequalities"] = sys.size();
  Json residues = Json::array();
  for (const auto& e : res.closure.edges) {
    if (e.residue) residues.push_back(Json{{"id", e.id + 1}, {"inequality", e.label.str()}});
  }
  o.report["residue_edges"] = std::move(residues);
  if (res.satisfiable) {
    o.report["verdict"] = "SAT";
    o.report["certificate"] = nullptr;
    o.text = "SAT\n";
    return o;
  }
  const PathDesc check = make_path(res.closure, res.certificate->vertices, res.certificate->edges);
  if (!residue_of_path(check).is_false()) unverified("loop residue");
  o.exit_code = 1;
  o.report["verdict"] = "UNSAT";
  o.report["certificate"] = {{"loop", path_json(*res.certificate)}, {"residue", residue_json(*res.residue)}};
  o.text = "UNSAT\ninfeasible loop " + res.certificate->str() + " with residue " + res.residue->str() + "\n";
  for (std::size_t k = 0; k < res.certificate->edges.size(); ++k) {
    o.text += "  edge " + std::to_string(res.certificate->edges[k] + 1) + ": " +
              res.closure.edges[res.certificate->edges[k]].label.str() + "\n";
  }
  return o;
}

Outcome run_twovpi_check(const CommandRequest& req) {
  Outcome o;
  const TwoVarSystem sys = parse_system(read_file(single_input(req)));
  const InjectivityReport rep = check_injective_2vpi(sys, injectivity_options(req));
  const HPolyhedron p(to_constraint_system(sys));
  if (!verify_report(p, rep)) unverified("per-face cone test");
  o.report = report_json(rep);
  o.text = std::string(verdict_name(rep.verdict)) + "\n";
  if (rep.verdict == Verdict::NotInjective) {
    o.exit_code = 1;
    o.report["finding"] = "closed 2VPI polyhedron reported NOT_INJECTIVE";
    o.text += "finding: closed 2VPI polyhedron reported NOT_INJECTIVE, failing face " +
              face_text(*rep.failing_face) + "\n";
  }
  return o;
}

std::vector<std::size_t> parse_order(const std::string& text) {
  std::vector<std::size_t> out;
  const RVec v = RVec::parse(text);
  for (const auto& r : v) {
    if (!r.is_integer() || r.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "clamp order uses 1-based indices");
    out.push_back(static_cast<std::size_t>(r.to_double()) - 1);
  }
  return out;
}

Outcome run_retract(const CommandRequest& req) {
  Outcome o;
  if (!req.point) usage("retract needs --point");
  const RVec x = RVec::parse(*req.point);
  if (req.example2) {
    if (!req.inputs.empty()) usage("--example2 takes no Q file");
    const RVec y = example2_retraction(x);
    o.report["point"] = vec_json(y);
    o.text = y.str() + "\n";
    return o;
  }
  BoxConstraintSet q = parse_q(read_file(single_input(req)));
  if (req.rescale_k || req.radius) {
    if (!req.rescale_k || !req.radius) usage("--rescale-k and --radius go together");
    q = rescale_bounds(q, Rat::parse(*req.radius), *req.rescale_k);
    o.report["rescaled"] = {{"k", *req.rescale_k}, {"R", Rat::parse(*req.radius).str()}};
  }
  RetractionOptions ro;
  if (req.tol) ro.tol = Rat::parse(*req.tol);
  if (ro.tol.sign() < 0) usage("--tol must be non-negative");
  ro.max_iter = req.max_iter;
  const auto order = req.order ? parse_order(*req.order) : q.default_order();
  const RetractionResult res = iterate_retraction(q, x, order, ro);
  if (!q.contains(res.point, ro.tol)) unverified("retracted point outside Q");
  const Rat lam = q.lambda();
  if (lam < Rat(1) && !trace_contracts(res.trace, lam)) unverified("contraction inequality");
  o.report["point"] = vec_json(res.point);
  o.report["iterations"] = res.trace.size();
  o.report["lambda"] = lam.str();
  Json trace = Json::array();
  for (const auto& d : res.trace) trace.push_back(d.str());
  o.report["trace"] = std::move(trace);
  o.text = res.point.str() + "\n" + std::to_string(res.trace.size()) + " iterations, last step " +
           res.trace.back().str() + "\n";
  return o;
}

Outcome run_witness(const CommandRequest& req) {
  Outcome o;
  const HPolyhedron p(parse_sys(read_file(single_input(req))));
  if (req.balls) {
    const BallFamily fam = parse_balls(read_file(*req.balls));
    const BallCheck bc = verify_ball_family(p, fam);
    if (bc.verdict == BallVerdict::Intersects && !(bc.common_point && p.contains(*bc.common_point))) {
      unverified("common point");
    }
    o.exit_code = bc.verdict == BallVerdict::Intersects ? 0 : 1;
    o.report = ball_check_json(bc);
    o.text = std::string(ball_verdict_name(bc.verdict)) + "\n";
    if (bc.bad_pair) {
      o.text += "balls " + std::to_string(bc.bad_pair->first + 1) + " and " + std::to_string(bc.bad_pair->second + 1) +
                " are not compatible\n";
    }
    if (!bc.box_lo.empty()) o.text += "ball intersection box " + bc.box_lo.str() + " .. " + bc.box_hi.str() + "\n";
    if (bc.common_point) o.text += "common point " + bc.common_point->str() + "\n";
    return o;
  }
  const auto fam = search_witness(p, req.trials, req.seed);
  o.report["seed"] = req.seed;
  o.report["trials"] = req.trials;
  if (!fam) {
    o.report["verdict"] = "NONE_FOUND";
    o.report["balls"] = nullptr;
    o.text = "no violating ball family in " + std::to_string(req.trials) + " trials\n";
    return o;
  }
  const BallCheck bc = verify_ball_family(p, *fam);
  if (bc.verdict != BallVerdict::Violates) unverified("witness ball family");
  o.exit_code = 1;
  o.report["verdict"] = "VIOLATES";
  o.report["balls"] = ball_family_json(*fam);
  o.report["check"] = ball_check_json(bc);
  o.text = "VIOLATES\n" + family_text(*fam);
  return o;
}

Outcome run_kc(const CommandRequest& req) {
  Outcome o;
  if (!req.point) usage("kc needs --point");
  const ConeSystem c(parse_sys(read_file(single_input(req))));
  const RVec x = RVec::parse(*req.point);
  if (x.dim() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from the cone");
  const bool member = kc_contains(c, x);
  Json sc = Json::array();
  std::string sc_text;
  for (const auto& f : sector_avoidance(c)) {
    sc.push_back(to_string(f));
    sc_text += " " + to_string(f);
  }
  o.exit_code = member ? 0 : 1;
  o.report["point"] = vec_json(x);
  o.report["avoided_sectors"] = std::move(sc);
  o.report["member"] = member;
  o.text = std::string(member ? "MEMBER" : "NOT_MEMBER") + "\navoided sectors:" + (sc_text.empty() ? " none" : sc_text) + "\n";
  return o;
}

Outcome run(const CommandRequest& req) {
  if (req.jobs == 0) usage("--jobs must be at least 1");
  if (req.command == "check") return run_check(req);
  if (req.command == "hyperplane") return run_hyperplane(req);
  if (req.command == "subspace") return run_subspace(req);
  if (req.command == "twovpi-sat") return run_twovpi_sat(req);
  if (req.command == "twovpi-check") return run_twovpi_check(req);
  if (req.command == "retract") return run_retract(req);
  if (req.command == "witness") return run_witness(req);
  if (req.command == "kc") return run_kc(req);
  usage("unknown command '" + req.command + "'");
}

}  // namespace

CommandResult dispatch(const CommandRequest& req) {
  CommandResult res;
  Json doc;
  doc["command"] = req.command;
  try {
    Outcome o = run(req);
    res.exit_code = o.exit_code;
    for (auto& [k, v] : o.report.items()) doc[k] = v;
    res.out = req.json ? doc.dump(2) + "\n" : o.text;
    return res;
  } catch (const Error& e) {
    res.exit_code = is_resource_error(e.code()) ? 3 : 2;
    doc["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    if (const auto* mi = dynamic_cast<const MaxIterError*>(&e)) doc["best"] = vec_json(mi->best().point);
    res.err = std::string(error_code_name(e.code())) + ": " + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = 2;
    doc["error"] = {{"code", "InvalidArgument"}, {"message", e.what()}};
    res.err = std::string("error: ") + e.what() + "\n";
  }
  if (req.json) res.out = doc.dump(2) + "\n";
  return res;
}

}  // namespace hcx
