#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "rfferr/experiment.hpp"

namespace {

struct CliOptions {
  rfferr::ExperimentSpec spec;
  std::string task = "matrix-linf";
  std::string kernel = "gaussian";
  double tol = 0.1;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--task", opt.task,
                  "matrix-linf | matrix-op | krr | mmd")
      ->capture_default_str();
  cmd->add_option("--dataset", opt.spec.dataset,
                  "dataset descriptor, e.g. swiss-roll:n=300 or "
                  "csv:path=data.csv,header=1 (see README)")
      ->capture_default_str();
  cmd->add_option("--kernel", opt.kernel, "gaussian | laplacian | cauchy")
      ->capture_default_str();
  cmd->add_option("--scale", opt.spec.kernel_scale,
                  "kernel bandwidth (sigma for gaussian, gamma otherwise)")
      ->capture_default_str();
  cmd->add_option("--s-grid", opt.spec.s_grid,
                  "feature counts, comma separated and strictly increasing")
      ->delimiter(',');
  cmd->add_option("--s0", opt.spec.s0,
                  "extrapolation base (default: smallest grid value)")
      ->capture_default_str();
  cmd->add_option("--alpha", opt.spec.alpha, "quantile level is 1 - alpha")
      ->capture_default_str();
  cmd->add_option("--n-boot", opt.spec.bootstrap_iterations,
                  "bootstrap iterations per estimate")
      ->capture_default_str();
  cmd->add_option("--trials", opt.spec.trials,
                  "independent feature-map realizations per grid point")
      ->capture_default_str();
  cmd->add_option("--seed", opt.spec.seed, "random seed; fixes all output")
      ->capture_default_str();
  cmd->add_option("--out", opt.spec.out_path,
                  "output CSV path (default: stdout)");
  cmd->add_option("--workers", opt.spec.workers, "parallel workers")
      ->capture_default_str();
  cmd->add_option("--lambda", opt.spec.lambda, "ridge regularization (krr)")
      ->capture_default_str();
  cmd->add_flag("--sqrt-y", opt.spec.sqrt_y,
                "take the square root of the labels (krr)");
  cmd->add_flag("--rescale", opt.spec.rescale,
                "divide value columns by the oracle at the smallest s");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Random Fourier Feature error estimation: bootstrap quantile "
      "experiments and feature-count selection"};
  app.require_subcommand(1);

  CliOptions run_opt;
  CLI::App* run = app.add_subcommand(
      "experiment",
      "sweep a feature-count grid; emit oracle/bootstrap/extrapolated CSV");
  add_common_options(run, run_opt);

  CliOptions sel_opt;
  CLI::App* sel = app.add_subcommand(
      "select", "recommend a feature count for an error tolerance");
  add_common_options(sel, sel_opt);
  sel->add_option("--tol", sel_opt.tol, "target error tolerance")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      run_opt.spec.task = rfferr::task_from_string(run_opt.task);
      run_opt.spec.kernel_family =
          rfferr::kernel_family_from_string(run_opt.kernel);
      rfferr::run_experiment(run_opt.spec);
    } else {
      sel_opt.spec.task = rfferr::task_from_string(sel_opt.task);
      sel_opt.spec.kernel_family =
          rfferr::kernel_family_from_string(sel_opt.kernel);
      rfferr::run_select(sel_opt.spec, sel_opt.tol, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
