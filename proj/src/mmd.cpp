#include "rfferr/mmd.hpp"

#include <cmath>
#include <stdexcept>

namespace rfferr {

void MmdProblem::validate() const {
  if (x.rows() != y.rows()) {
    throw std::invalid_argument("mmd: samples must have equal size");
  }
  if (x.cols() != y.cols()) {
    throw std::invalid_argument("mmd: samples must have equal dimension");
  }
  if (x.rows() < 2) throw std::invalid_argument("mmd: requires n >= 2");
}

double mmd_exact(const MmdProblem& problem, const Kernel& kernel) {
  problem.validate();
  const Eigen::Index n = problem.x.rows();
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      xx += kernel.eval_displacement(
          (problem.x.row(i) - problem.x.row(j)).transpose());
      yy += kernel.eval_displacement(
          (problem.y.row(i) - problem.y.row(j)).transpose());
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      xy += kernel.eval_displacement(
          (problem.x.row(i) - problem.y.row(j)).transpose());
    }
  }
  const double dn = static_cast<double>(n);
  return 2.0 * xx / (dn * (dn - 1.0)) - 2.0 * xy / (dn * dn) +
         2.0 * yy / (dn * (dn - 1.0));
}

double mmd_rff_quadratic(const MmdProblem& problem, const FeatureMap& map) {
  problem.validate();
  const Eigen::Index n = problem.x.rows();
  const Eigen::MatrixXd zx = build_feature_matrix(map, problem.x);
  const Eigen::MatrixXd zy = build_feature_matrix(map, problem.y);
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      xx += zx.row(i).dot(zx.row(j));
      yy += zy.row(i).dot(zy.row(j));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      xy += zx.row(i).dot(zy.row(j));
    }
  }
  const double dn = static_cast<double>(n);
  return 2.0 * xx / (dn * (dn - 1.0)) - 2.0 * xy / (dn * dn) +
         2.0 * yy / (dn * (dn - 1.0));
}

namespace {

struct LinearTerms {
  Eigen::VectorXd mean_x, mean_y;    // column means of the feature matrices
  Eigen::VectorXd sqsum_x, sqsum_y;  // per-feature sums of squared entries
  double n;
};

LinearTerms linear_terms(const MmdProblem& problem, const FeatureMap& map) {
  const Eigen::MatrixXd zx = build_feature_matrix(map, problem.x);
  const Eigen::MatrixXd zy = build_feature_matrix(map, problem.y);
  LinearTerms t;
  t.n = static_cast<double>(problem.x.rows());
  t.mean_x = zx.colwise().mean();
  t.mean_y = zy.colwise().mean();
  t.sqsum_x = zx.array().square().colwise().sum();
  t.sqsum_y = zy.array().square().colwise().sum();
  return t;
}

// T~ restricted to the feature multiset given by idx (identity = all
// features once).
double linear_statistic(const LinearTerms& t, const std::vector<int>& idx) {
  const Eigen::Index s = t.mean_x.size();
  double axx = 0.0, ayy = 0.0, axy = 0.0, sx = 0.0, sy = 0.0;
  for (int i : idx) {
    if (i < 0 || i >= s) {
      throw std::invalid_argument("mmd functional: index out of range");
    }
    axx += t.mean_x[i] * t.mean_x[i];
    ayy += t.mean_y[i] * t.mean_y[i];
    axy += t.mean_x[i] * t.mean_y[i];
    sx += t.sqsum_x[i];
    sy += t.sqsum_y[i];
  }
  const double n2 = t.n * t.n;
  const double fac = n2 / (n2 - t.n);
  return fac * (axx - sx / n2) - 2.0 * axy + fac * (ayy - sy / n2);
}

std::vector<int> identity_indices(Eigen::Index s) {
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
  return idx;
}

class MmdFunctional final : public ErrorFunctional {
 public:
  MmdFunctional(const MmdProblem& problem, const FeatureMap& map)
      : terms_(linear_terms(problem, map)) {
    ref_ = linear_statistic(terms_, identity_indices(terms_.mean_x.size()));
  }

  double operator()(const std::vector<int>& idx, RngStream&) const override {
    return linear_statistic(terms_, idx) - ref_;
  }

 private:
  LinearTerms terms_;
  double ref_;
};

}  // namespace

double mmd_rff_linear(const MmdProblem& problem, const FeatureMap& map) {
  problem.validate();
  const LinearTerms t = linear_terms(problem, map);
  return linear_statistic(t, identity_indices(t.mean_x.size()));
}

std::unique_ptr<ErrorFunctional> mmd_bootstrap_functional(
    const MmdProblem& problem, const FeatureMap& map) {
  problem.validate();
  return std::make_unique<MmdFunctional>(problem, map);
}

double mmd_test_cutoff(int m, double alpha) {
  if (m < 1) throw std::invalid_argument("mmd_test_cutoff: m must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("mmd_test_cutoff: alpha must be in (0,1)");
  }
  return 4.0 / std::sqrt(-static_cast<double>(m) * std::log(alpha));
}

}  // namespace rfferr
