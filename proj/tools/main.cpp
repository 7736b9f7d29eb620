#include <iostream>

#include <CLI11.hpp>

#include "hcx/cli.hpp"

int main(int argc, char** argv) {
  hcx::CommandRequest req;
  CLI::App app{"exact injectivity checks for l_inf polyhedra, 2VPI systems and Lipschitz retractions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", req.json, "emit a JSON report");
    sub->add_option("--jobs", req.jobs, "worker threads (output is identical for any value)");
  };
  auto file_arg = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", req.inputs, what)->check(CLI::ExistingFile);
  };

  auto* check = app.add_subcommand("check", "decide injectivity of a polyhedron given as a .sys file");
  file_arg(check, ".sys file");
  check->add_flag("--fast-minimal-faces", req.fast_minimal_faces, "only test minimal faces");
  check->add_flag("--witness", req.witness, "search a violating ball family when not injective");
  check->add_option("--seed", req.seed, "witness search seed");
  check->add_option("--trials", req.trials, "witness search trials");
  common(check);

  auto* hyper = app.add_subcommand("hyperplane", "injectivity of the hyperplane x . nu = 0");
  hyper->add_option("-v,--vector", req.vector, "normal vector, e.g. \"1,1,1\"")->required();
  common(hyper);

  auto* sub = app.add_subcommand("subspace", "injectivity of a linear subspace");
  file_arg(sub, ".sys file with homogeneous equalities");
  sub->add_option("-b,--basis", req.basis, "basis rows separated by ';'");
  common(sub);

  auto* sat = app.add_subcommand("twovpi-sat", "loop-residue satisfiability of a 2VPI system");
  file_arg(sat, ".2vpi file");
  common(sat);

  auto* tcheck = app.add_subcommand("twovpi-check", "injectivity of a closed 2VPI polyhedron");
  file_arg(tcheck, ".2vpi file");
  tcheck->add_flag("--fast-minimal-faces", req.fast_minimal_faces, "only test minimal faces");
  common(tcheck);

  auto* retract = app.add_subcommand("retract", "clamp-cycle retraction onto Q");
  file_arg(retract, "Q JSON file");
  retract->add_option("--point", req.point, "point to retract")->required();
  retract->add_option("--order", req.order, "clamp order, 1-based, e.g. \"2,1\"");
  retract->add_option("--tol", req.tol, "stopping tolerance (rational), default 2^-40");
  retract->add_option("--max-iter", req.max_iter, "iteration cap");
  retract->add_option("--rescale-k", req.rescale_k,
                      "retract onto Q_k instead (bounds scaled by 1 - 1/k about R); approximates Q on B(0,R) "
                      "within O(R/k) when Q's bounds are only 1-Lipschitz");
  retract->add_option("--radius", req.radius, "R for --rescale-k");
  retract->add_flag("--example2", req.example2, "use the closed-form retraction onto {x1 <= 0, 3 x1 <= x2+x3+x4}");
  common(retract);

  auto* witness = app.add_subcommand("witness", "check or search ball families that violate hyperconvexity");
  file_arg(witness, ".sys file");
  witness->add_option("--balls", req.balls, "ball family file")->check(CLI::ExistingFile);
  witness->add_option("--seed", req.seed, "search seed");
  witness->add_option("--trials", req.trials, "search trials");
  common(witness);

  auto* kc = app.add_subcommand("kc", "membership in the cone K_C of a full-dimensional cone C");
  file_arg(kc, ".sys file of C");
  kc->add_option("--point", req.point, "point to test")->required();
  common(kc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  req.command = app.get_subcommands().front()->get_name();

  const hcx::CommandResult res = hcx::dispatch(req);
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
