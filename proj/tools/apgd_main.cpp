#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "apgd/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"apgd: gradient-projection benchmarks with a self-adaptive step size"};
  app.require_subcommand(1);

  apgd::cli::RunSpec spec;
  std::string solver_name = "gda";
  double lambda0 = 0, sigma = 0, kappa = 0, step_tol = 0, delta = 0;
  std::size_t max_iter = 0, n = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_dataset, bool needs_n, bool has_delta = false) {
    cmd->add_option("--solver", solver_name, "gda | gd | sgda | nesterov")
        ->check(CLI::IsMember({"gda", "gd", "sgda", "nesterov"}));
    auto* l = cmd->add_option("--lambda0", lambda0, "initial step size (fixed step for gd)");
    auto* s = cmd->add_option("--sigma", sigma, "acceptance parameter in (0,1)");
    auto* k = cmd->add_option("--kappa", kappa, "step shrink factor in (0,1)");
    auto* m = cmd->add_option("--max-iter", max_iter, "iteration budget");
    auto* t = cmd->add_option("--step-tol", step_tol, "stop when ||x_{k+1}-x_k|| <= tol");
    auto* sd = cmd->add_option("--seed", seed, "rng seed");
    cmd->add_option("--output", spec.output_path, "trace file path");
    cmd->add_option("--format", spec.format, "trace format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (needs_dataset)
      cmd->add_option("--dataset", spec.dataset_path, "input dataset path")->required();
    CLI::Option* nopt = needs_n ? cmd->add_option("--n", n, "problem dimension")->required()
                                : nullptr;
    CLI::Option* dopt =
        has_delta ? cmd->add_option("--delta", delta, "diagonal shift of the similarity matrix")
                  : nullptr;
    cmd->callback([&, cmd, l, s, k, m, t, sd, nopt, dopt] {
      if (auto c = apgd::cli::parse_command(cmd->get_name())) spec.command = *c;
      if (auto sv = apgd::cli::parse_solver(solver_name)) spec.solver = *sv;
      if (l->count()) spec.lambda0 = lambda0;
      if (s->count()) spec.sigma = sigma;
      if (k->count()) spec.kappa = kappa;
      if (m->count()) spec.max_iter = max_iter;
      if (t->count()) spec.step_tol = step_tol;
      if (sd->count()) spec.seed = seed;
      if (nopt && nopt->count()) spec.n = n;
      if (dopt && dopt->count()) spec.delta = delta;
    });
  };

  add_common(app.add_subcommand("example1", "planar ratio objective on a quadratic superlevel set"),
             false, false);
  add_common(app.add_subcommand("example2", "4-d ratio objective on a cubic cap intersection"),
             false, false);
  add_common(app.add_subcommand("example3", "strongly convex objective on the log-product set"),
             false, true);
  add_common(app.add_subcommand("example4", "gaussian well on a hyperplane/ball intersection"),
             false, true);
  add_common(app.add_subcommand("featsel", "fractional feature selection on the simplex"), true,
             false, true);
  add_common(app.add_subcommand("logreg", "regularized logistic regression (LIBSVM input)"), true,
             false);

  auto* rc = app.add_subcommand("ratecheck", "decay-rate check on a seeded quadratic");
  rc->add_option("--n", n, "dimension");
  rc->add_option("--max-iter", max_iter, "iteration budget");
  rc->add_option("--output", spec.output_path, "csv of (k, f(x_k) - f*) pairs");
  rc->add_option("--seed", seed, "rng seed");
  rc->callback([&, rc] {
    spec.command = apgd::cli::Command::RateCheck;
    if (rc->count("--n")) spec.n = n;
    if (rc->count("--max-iter")) spec.max_iter = max_iter;
    if (rc->count("--seed")) spec.seed = seed;
  });

  CLI11_PARSE(app, argc, argv);
  return apgd::cli::run(spec, std::cout, std::cerr);
}
