#include "rfferr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "rfferr/bootstrap.hpp"
#include "rfferr/datasets.hpp"
#include "rfferr/errnorms.hpp"
#include "rfferr/features.hpp"
#include "rfferr/mmd.hpp"
#include "rfferr/oracle.hpp"
#include "rfferr/parallel.hpp"
#include "rfferr/ridge.hpp"

namespace rfferr {

std::string to_string(Task task) {
  switch (task) {
    case Task::MatrixLinf: return "matrix-linf";
    case Task::MatrixOp: return "matrix-op";
    case Task::Krr: return "krr";
    case Task::Mmd: return "mmd";
  }
  return "?";
}

Task task_from_string(const std::string& name) {
  if (name == "matrix-linf") return Task::MatrixLinf;
  if (name == "matrix-op") return Task::MatrixOp;
  if (name == "krr") return Task::Krr;
  if (name == "mmd") return Task::Mmd;
  throw std::invalid_argument("unknown task: " + name);
}

namespace {

constexpr std::uint64_t kDataTag = 0x64617461ull;
constexpr std::uint64_t kMapTag = 0x6d617073ull;
constexpr std::uint64_t kBootTag = 0x65737473ull;

// --- dataset descriptor parsing ---------------------------------------------

struct KvArgs {
  std::string name;
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  std::string str(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  double num(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("dataset option '" + k +
                                  "' has a non-numeric value: " + it->second);
    }
  }
  int integer(const std::string& k, int dflt) const {
    return static_cast<int>(num(k, dflt));
  }
};

KvArgs parse_descriptor(const std::string& descriptor) {
  KvArgs args;
  const std::size_t colon = descriptor.find(':');
  args.name = descriptor.substr(0, colon);
  if (colon == std::string::npos) return args;
  std::stringstream rest(descriptor.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      args.kv[item] = "1";
    } else {
      args.kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return args;
}

PointSet load_csv_points(const KvArgs& args, RngStream& rng, bool with_label) {
  if (!args.has("path")) {
    throw std::invalid_argument("csv dataset needs path=FILE");
  }
  PointSet ps = load_csv(args.str("path", ""), args.integer("header", 0) != 0,
                         with_label);
  const int rows = args.integer("rows", 0);
  const int cols = args.integer("cols", 0);
  if (rows > 0 || cols > 0) {
    ps = subsample(ps, rows > 0 ? rows : static_cast<int>(ps.points.rows()),
                   cols > 0 ? cols : static_cast<int>(ps.points.cols()), rng);
  }
  if (args.integer("minmax", 0) != 0) ps = minmax_scale(ps);
  return ps;
}

Eigen::MatrixXd load_points(const ExperimentSpec& spec) {
  RngStream rng = RngStream::derive(spec.seed, {kDataTag});
  const KvArgs args = parse_descriptor(spec.dataset);
  if (args.name == "swiss-roll") {
    return gen_swiss_roll(args.integer("n", 300), rng).points;
  }
  if (args.name == "lorenz") {
    return gen_lorenz(args.integer("n", 300), args.num("dt", 0.01),
                      Eigen::Vector3d(1.0, 1.0, 1.0),
                      args.integer("burn", 1000))
        .points;
  }
  if (args.name == "csv") {
    return load_csv_points(args, rng, false).points;
  }
  throw std::invalid_argument("dataset '" + args.name +
                              "' is not usable for matrix tasks");
}

RidgeProblem load_ridge(const ExperimentSpec& spec) {
  RngStream rng = RngStream::derive(spec.seed, {kDataTag});
  const KvArgs args = parse_descriptor(spec.dataset);
  RidgeProblem problem;
  problem.lambda = spec.lambda;
  if (args.name == "synth-reg") {
    auto [train, test] = gen_synth_regression(
        args.integer("n", 2000), args.integer("t", 50), args.integer("d", 10),
        args.num("amp", 0.3), args.num("noise", 1.0), rng);
    problem.x_train = std::move(train.points);
    problem.y_train = std::move(train.labels);
    problem.x_test = std::move(test.points);
    problem.y_test = std::move(test.labels);
  } else if (args.name == "csv") {
    PointSet ps = load_csv_points(args, rng, true);
    const int t = args.integer("test", 0);
    const int n = static_cast<int>(ps.points.rows());
    if (t < 1 || t >= n) {
      throw std::invalid_argument("csv krr dataset needs test=T with 0 < T < rows");
    }
    problem.x_train = ps.points.topRows(n - t);
    problem.y_train = ps.labels.head(n - t);
    problem.x_test = ps.points.bottomRows(t);
    problem.y_test = ps.labels.tail(t);
  } else {
    throw std::invalid_argument("dataset '" + args.name +
                                "' is not usable for the krr task");
  }
  if (spec.sqrt_y) {
    if (problem.y_train.minCoeff() < 0.0 || problem.y_test.minCoeff() < 0.0) {
      throw std::invalid_argument("--sqrt-y requires nonnegative labels");
    }
    problem.y_train = problem.y_train.cwiseSqrt();
    problem.y_test = problem.y_test.cwiseSqrt();
  }
  problem.validate();
  return problem;
}

MmdProblem load_mmd(const ExperimentSpec& spec) {
  RngStream rng = RngStream::derive(spec.seed, {kDataTag});
  const KvArgs args = parse_descriptor(spec.dataset);
  MmdProblem problem;
  if (args.name == "gauss-pair") {
    auto [a, b] = gen_gaussian_pair(args.integer("n", 2000),
                                    args.integer("d", 10),
                                    args.num("var1", 0.1),
                                    args.num("var2", 0.1933), rng);
    problem.x = std::move(a.points);
    problem.y = std::move(b.points);
  } else if (args.name == "csv") {
    if (!args.has("path2")) {
      throw std::invalid_argument("csv mmd dataset needs path2=FILE for the second sample");
    }
    KvArgs second = args;
    second.kv["path"] = args.str("path2", "");
    problem.x = load_csv_points(args, rng, false).points;
    problem.y = load_csv_points(second, rng, false).points;
  } else {
    throw std::invalid_argument("dataset '" + args.name +
                                "' is not usable for the mmd task");
  }
  problem.validate();
  return problem;
}

// --- experiment engine -------------------------------------------------------

ErrorMode task_mode(Task task) {
  // signed test-MSE differences for regression, absolute elsewhere
  return task == Task::Krr ? ErrorMode::Signed : ErrorMode::Absolute;
}

struct TaskContext {
  const ExperimentSpec& spec;
  Kernel kernel;
  // matrix tasks
  Eigen::MatrixXd points;
  Eigen::MatrixXd exact_k;
  // krr
  RidgeProblem ridge;
  double psi_k = 0.0;
  // mmd
  MmdProblem mmd;
  double t_exact = 0.0;

  int data_dim() const {
    switch (spec.task) {
      case Task::Krr: return static_cast<int>(ridge.x_train.cols());
      case Task::Mmd: return static_cast<int>(mmd.x.cols());
      default: return static_cast<int>(points.cols());
    }
  }
};

TaskContext make_context(const ExperimentSpec& spec) {
  TaskContext ctx{spec, Kernel(spec.kernel_family, spec.kernel_scale)};
  switch (spec.task) {
    case Task::MatrixLinf:
    case Task::MatrixOp:
      ctx.points = load_points(spec);
      ctx.exact_k = exact_kernel_matrix(ctx.kernel, ctx.points);
      break;
    case Task::Krr:
      ctx.ridge = load_ridge(spec);
      ctx.psi_k = psi_exact(ctx.ridge, ctx.kernel);
      break;
    case Task::Mmd:
      ctx.mmd = load_mmd(spec);
      ctx.t_exact = mmd_exact(ctx.mmd, ctx.kernel);
      break;
  }
  return ctx;
}

// One feature-map realization: the realized true error and the bootstrap
// estimate from that single realization.
void run_trial(const TaskContext& ctx, int s, int trial, double* true_error,
               double* estimate) {
  const ExperimentSpec& spec = ctx.spec;
  RngStream map_rng = RngStream::derive(
      spec.seed,
      {kMapTag, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(trial)});
  const FeatureMap map = make_feature_map(ctx.kernel, ctx.data_dim(), s, map_rng);

  BootstrapConfig cfg;
  cfg.iterations = spec.bootstrap_iterations;
  cfg.alpha = spec.alpha;
  cfg.mode = task_mode(spec.task);
  cfg.seed = RngStream::derive_seed(
      spec.seed,
      {kBootTag, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(trial)});

  switch (spec.task) {
    case Task::MatrixLinf: {
      const Eigen::MatrixXd z = build_feature_matrix(map, ctx.points);
      if (true_error) {
        Eigen::MatrixXd approx = z * z.transpose();
        *true_error = linf_error(approx, ctx.exact_k);
      }
      *estimate = run_bootstrap(*linf_matrix_functional(z), s, cfg).estimate;
      break;
    }
    case Task::MatrixOp: {
      const Eigen::MatrixXd z = build_feature_matrix(map, ctx.points);
      if (true_error) {
        Eigen::MatrixXd diff = z * z.transpose() - ctx.exact_k;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
            diff, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        *true_error = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
      }
      *estimate = run_bootstrap(*opnorm_matrix_functional(z), s, cfg).estimate;
      break;
    }
    case Task::Krr: {
      const Eigen::MatrixXd z = build_feature_matrix(map, ctx.ridge.x_train);
      if (true_error) {
        const RffRidgeFit fit = fit_rff(ctx.ridge, z, map);
        *true_error = psi_rff(fit, ctx.ridge) - ctx.psi_k;
      }
      *estimate =
          run_bootstrap(*krr_bootstrap_functional(ctx.ridge, z, map), s, cfg)
              .estimate;
      break;
    }
    case Task::Mmd: {
      if (true_error) {
        *true_error = std::abs(mmd_rff_linear(ctx.mmd, map) - ctx.t_exact);
      }
      *estimate =
          run_bootstrap(*mmd_bootstrap_functional(ctx.mmd, map), s, cfg)
              .estimate;
      break;
    }
  }
}

void validate_spec(const ExperimentSpec& spec, bool need_grid) {
  if (need_grid) {
    if (spec.s_grid.empty()) throw std::invalid_argument("s-grid must not be empty");
    for (std::size_t i = 1; i < spec.s_grid.size(); ++i) {
      if (spec.s_grid[i] <= spec.s_grid[i - 1]) {
        throw std::invalid_argument("s-grid must be strictly increasing");
      }
    }
    if (spec.s_grid.front() < 1) throw std::invalid_argument("s-grid values must be >= 1");
  }
  if (spec.s0 < 0) throw std::invalid_argument("s0 must be >= 1");
  if (need_grid && spec.s0 > 0 && spec.s0 > spec.s_grid.front()) {
    throw std::invalid_argument("s0 must not exceed the smallest grid value");
  }
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1)");
  }
  if (spec.bootstrap_iterations < 1) throw std::invalid_argument("n-boot must be >= 1");
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (spec.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

struct Column {
  double oracle = 0.0;
  double mean_est = 0.0;
  double sd_est = 0.0;
};

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec, true);
  const TaskContext ctx = make_context(spec);
  const int s0 = spec.s0 > 0 ? spec.s0 : spec.s_grid.front();

  // bootstrap estimates at s0 drive the extrapolation columns; when s0 sits
  // in the grid the same estimates fill that grid row
  std::map<int, Column> columns;
  std::vector<double> est_s0;
  for (int s : spec.s_grid) {
    std::vector<double> trues(static_cast<std::size_t>(spec.trials));
    std::vector<double> ests(static_cast<std::size_t>(spec.trials));
    parallel_for(spec.trials, spec.workers, [&](int t) {
      run_trial(ctx, s, t, &trues[static_cast<std::size_t>(t)],
                &ests[static_cast<std::size_t>(t)]);
    });
    Column col;
    col.oracle = empirical_quantile(trues, 1.0 - spec.alpha);
    col.mean_est = mean_of(ests);
    col.sd_est = sd_of(ests, col.mean_est);
    columns[s] = col;
    if (s == s0) est_s0 = std::move(ests);
  }
  if (est_s0.empty()) {
    est_s0.resize(static_cast<std::size_t>(spec.trials));
    parallel_for(spec.trials, spec.workers, [&](int t) {
      run_trial(ctx, s0, t, nullptr, &est_s0[static_cast<std::size_t>(t)]);
    });
  }
  const double mean_s0 = mean_of(est_s0);
  const double sd_s0 = sd_of(est_s0, mean_s0);

  double scale = 1.0;
  if (spec.rescale) {
    scale = columns.at(spec.s_grid.front()).oracle;
    if (scale == 0.0) {
      throw std::runtime_error("cannot rescale: oracle value at the smallest s is 0");
    }
  }

  std::ofstream file;
  if (!spec.out_path.empty()) {
    file.open(spec.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + spec.out_path);
  }
  std::ostream& out = spec.out_path.empty() ? std::cout : file;

  out << "s,oracle_quantile,mean_bootstrap_estimate,sd_bootstrap_estimate,"
         "mean_extrapolated_estimate,sd_extrapolated_estimate\n";
  for (int s : spec.s_grid) {
    const Column& col = columns.at(s);
    const double ext_factor = std::sqrt(static_cast<double>(s0) / s);
    out << s << ',' << format_value(col.oracle / scale) << ','
        << format_value(col.mean_est / scale) << ','
        << format_value(col.sd_est / scale) << ','
        << format_value(ext_factor * mean_s0 / scale) << ','
        << format_value(ext_factor * sd_s0 / scale) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing output: " + spec.out_path);
}

SelectReport run_select(const ExperimentSpec& spec, double tol,
                        std::ostream& out) {
  validate_spec(spec, !spec.s_grid.empty() || spec.s0 == 0);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int s0 = spec.s0 > 0 ? spec.s0
                             : (spec.s_grid.empty() ? 0 : spec.s_grid.front());
  if (s0 < 1) throw std::invalid_argument("select needs s0 or a nonempty s-grid");

  const TaskContext ctx = make_context(spec);
  RngStream map_rng = RngStream::derive(
      spec.seed, {kMapTag, static_cast<std::uint64_t>(s0), 0ull});
  const FeatureMap map =
      make_feature_map(ctx.kernel, ctx.data_dim(), s0, map_rng);

  BootstrapConfig cfg;
  cfg.iterations = spec.bootstrap_iterations;
  cfg.alpha = spec.alpha;
  cfg.mode = task_mode(spec.task);
  cfg.seed = RngStream::derive_seed(
      spec.seed, {kBootTag, static_cast<std::uint64_t>(s0), 0ull});

  std::unique_ptr<ErrorFunctional> functional;
  Eigen::MatrixXd z;
  switch (spec.task) {
    case Task::MatrixLinf:
      z = build_feature_matrix(map, ctx.points);
      functional = linf_matrix_functional(z);
      break;
    case Task::MatrixOp:
      z = build_feature_matrix(map, ctx.points);
      functional = opnorm_matrix_functional(z);
      break;
    case Task::Krr:
      z = build_feature_matrix(map, ctx.ridge.x_train);
      functional = krr_bootstrap_functional(ctx.ridge, z, map);
      break;
    case Task::Mmd:
      functional = mmd_bootstrap_functional(ctx.mmd, map);
      break;
  }
  const BootstrapResult boot =
      run_bootstrap(*functional, s0, cfg, spec.workers);

  SelectReport report;
  report.s0 = s0;
  report.estimate = boot.estimate;
  report.tolerance = tol;
  report.recommended_s1 =
      select_feature_count(std::max(boot.estimate, 0.0), s0, tol);
  report.predicted_error = extrapolate(boot.estimate, s0, report.recommended_s1);

  out << "task: " << to_string(spec.task) << '\n'
      << "s0: " << report.s0 << '\n'
      << "estimate: " << format_value(report.estimate) << '\n'
      << "tolerance: " << format_value(report.tolerance) << '\n'
      << "recommended_s1: " << report.recommended_s1 << '\n'
      << "predicted_error_at_s1: " << format_value(report.predicted_error)
      << '\n';
  return report;
}

}  // namespace rfferr
