#include "rfferr/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "rfferr/errnorms.hpp"
#include "rfferr/features.hpp"
#include "rfferr/parallel.hpp"

namespace rfferr {

namespace {

constexpr std::uint64_t kTrialTag = 0x6f7261636cull;

void check_args(int s, double alpha, int trials) {
  if (s < 1) throw std::invalid_argument("oracle: s must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("oracle: alpha must be in (0,1)");
  }
  if (trials < 30) throw std::invalid_argument("oracle: trials must be >= 30");
}

OracleResult collect(std::vector<double> samples, double alpha) {
  OracleResult r;
  r.trials = static_cast<int>(samples.size());
  r.alpha = alpha;
  r.quantile = empirical_quantile(samples, 1.0 - alpha);
  r.error_samples = std::move(samples);
  return r;
}

}  // namespace

OracleResult oracle_matrix_quantile(const Eigen::MatrixXd& points,
                                    const Kernel& kernel, MatrixNorm norm,
                                    int s, double alpha, int trials,
                                    std::uint64_t seed, int workers) {
  check_args(s, alpha, trials);
  const Eigen::MatrixXd k = exact_kernel_matrix(kernel, points);
  const int d = static_cast<int>(points.cols());

  std::vector<double> samples(static_cast<std::size_t>(trials));
  parallel_for(trials, workers, [&](int t) {
    RngStream rng =
        RngStream::derive(seed, {kTrialTag, static_cast<std::uint64_t>(t)});
    const FeatureMap map = make_feature_map(kernel, d, s, rng);
    const Eigen::MatrixXd z = build_feature_matrix(map, points);
    Eigen::MatrixXd diff(points.rows(), points.rows());
    diff.noalias() = z * z.transpose();
    diff -= k;
    if (norm == MatrixNorm::Linf) {
      samples[static_cast<std::size_t>(t)] = diff.cwiseAbs().maxCoeff();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
          diff, Eigen::EigenvaluesOnly);
      const auto& ev = eig.eigenvalues();
      samples[static_cast<std::size_t>(t)] =
          std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    }
  });
  return collect(std::move(samples), alpha);
}

OracleResult oracle_krr_quantile(const RidgeProblem& problem,
                                 const Kernel& kernel, int s, double alpha,
                                 int trials, std::uint64_t seed,
                                 ErrorMode mode, int workers) {
  check_args(s, alpha, trials);
  problem.validate();
  const double psi_k = psi_exact(problem, kernel);
  const int d = static_cast<int>(problem.x_train.cols());

  std::vector<double> samples(static_cast<std::size_t>(trials));
  parallel_for(trials, workers, [&](int t) {
    RngStream rng =
        RngStream::derive(seed, {kTrialTag, static_cast<std::uint64_t>(t)});
    const FeatureMap map = make_feature_map(kernel, d, s, rng);
    const Eigen::MatrixXd z = build_feature_matrix(map, problem.x_train);
    const RffRidgeFit fit = fit_rff(problem, z, map);
    double delta = psi_rff(fit, problem) - psi_k;
    if (mode == ErrorMode::Absolute) delta = std::abs(delta);
    samples[static_cast<std::size_t>(t)] = delta;
  });
  return collect(std::move(samples), alpha);
}

OracleResult oracle_mmd_quantile(const MmdProblem& problem,
                                 const Kernel& kernel, int s, double alpha,
                                 int trials, std::uint64_t seed, int workers) {
  check_args(s, alpha, trials);
  problem.validate();
  const double t_exact = mmd_exact(problem, kernel);
  const int d = static_cast<int>(problem.x.cols());

  std::vector<double> samples(static_cast<std::size_t>(trials));
  parallel_for(trials, workers, [&](int t) {
    RngStream rng =
        RngStream::derive(seed, {kTrialTag, static_cast<std::uint64_t>(t)});
    const FeatureMap map = make_feature_map(kernel, d, s, rng);
    samples[static_cast<std::size_t>(t)] =
        std::abs(mmd_rff_linear(problem, map) - t_exact);
  });
  return collect(std::move(samples), alpha);
}

}  // namespace rfferr
