#include "rfferr/ridge.hpp"

#include <stdexcept>

#include "rfferr/errnorms.hpp"

namespace rfferr {

void RidgeProblem::validate() const {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("ridge: lambda must be positive");
  }
  if (x_train.rows() < 1 || x_test.rows() < 1) {
    throw std::invalid_argument("ridge: empty train or test set");
  }
  if (x_train.cols() != x_test.cols()) {
    throw std::invalid_argument("ridge: train/test dimension mismatch");
  }
  if (y_train.size() != x_train.rows() || y_test.size() != x_test.rows()) {
    throw std::invalid_argument("ridge: label count mismatch");
  }
}

namespace {

Eigen::VectorXd spd_solve(Eigen::MatrixXd a, const Eigen::VectorXd& rhs,
                          const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(std::move(a));
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(what) + ": SPD solve failed");
  }
  return llt.solve(rhs);
}

}  // namespace

Eigen::VectorXd fit_exact(const RidgeProblem& problem, const Kernel& kernel) {
  problem.validate();
  Eigen::MatrixXd k = exact_kernel_matrix(kernel, problem.x_train);
  k.diagonal().array() += problem.lambda;
  return spd_solve(std::move(k), problem.y_train, "fit_exact");
}

double psi_exact(const RidgeProblem& problem, const Kernel& kernel) {
  const Eigen::VectorXd beta = fit_exact(problem, kernel);
  const Eigen::MatrixXd cross =
      exact_kernel_cross(kernel, problem.x_test, problem.x_train);
  const Eigen::VectorXd pred = cross * beta;
  return (problem.y_test - pred).squaredNorm() /
         static_cast<double>(problem.y_test.size());
}

RffRidgeFit fit_rff(const RidgeProblem& problem, const Eigen::MatrixXd& z,
                    const FeatureMap& map) {
  problem.validate();
  if (z.rows() != problem.x_train.rows() || z.cols() != map.count()) {
    throw std::invalid_argument("fit_rff: feature matrix shape mismatch");
  }
  Eigen::MatrixXd gram = z.transpose() * z;
  gram.diagonal().array() += problem.lambda;
  RffRidgeFit fit;
  fit.beta = spd_solve(std::move(gram), z.transpose() * problem.y_train,
                       "fit_rff");
  fit.map = map;
  return fit;
}

double psi_rff(const RffRidgeFit& fit, const RidgeProblem& problem) {
  const Eigen::MatrixXd zt = build_feature_matrix(fit.map, problem.x_test);
  const Eigen::VectorXd pred = zt * fit.beta;
  return (problem.y_test - pred).squaredNorm() /
         static_cast<double>(problem.y_test.size());
}

namespace {

class KrrFunctional final : public ErrorFunctional {
 public:
  KrrFunctional(const RidgeProblem& problem, const Eigen::MatrixXd& z,
                const FeatureMap& map)
      : problem_(problem), lambda_(problem.lambda) {
    problem.validate();
    if (z.rows() < z.cols()) {
      throw std::invalid_argument("krr_bootstrap_functional: requires n >= s");
    }
    r_ = qr_factor(z).r;
    b_ = z.transpose() * problem.y_train;
    zt_ = build_feature_matrix(map, problem.x_test);
    const int s = static_cast<int>(z.cols());
    std::vector<int> identity(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) identity[static_cast<std::size_t>(i)] = i;
    psi_ref_ = 0.0;
    psi_ref_ = resampled_psi(identity);
  }

  double operator()(const std::vector<int>& idx, RngStream&) const override {
    return resampled_psi(idx) - psi_ref_;
  }

 private:
  double resampled_psi(const std::vector<int>& idx) const {
    const Eigen::Index s = r_.cols();
    if (static_cast<Eigen::Index>(idx.size()) != s) {
      throw std::invalid_argument("krr functional: idx length must equal s");
    }
    Eigen::MatrixXd r_star(s, s);
    Eigen::VectorXd b_star(s);
    for (Eigen::Index l = 0; l < s; ++l) {
      const int i = idx[static_cast<std::size_t>(l)];
      if (i < 0 || i >= s) {
        throw std::invalid_argument("krr functional: index out of range");
      }
      r_star.col(l) = r_.col(i);
      b_star[l] = b_[i];
    }
    Eigen::MatrixXd gram = r_star.transpose() * r_star;
    gram.diagonal().array() += lambda_;
    Eigen::LLT<Eigen::MatrixXd> llt(std::move(gram));
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("krr functional: resampled solve failed");
    }
    const Eigen::VectorXd beta_star = llt.solve(b_star);
    // fold duplicated columns back onto the original features
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(s);
    for (Eigen::Index l = 0; l < s; ++l) {
      coef[idx[static_cast<std::size_t>(l)]] += beta_star[l];
    }
    const Eigen::VectorXd pred = zt_ * coef;
    return (problem_.y_test - pred).squaredNorm() /
           static_cast<double>(problem_.y_test.size());
  }

  const RidgeProblem& problem_;
  double lambda_;
  Eigen::MatrixXd r_;   // s x s upper-triangular factor of Z
  Eigen::VectorXd b_;   // Z^T y
  Eigen::MatrixXd zt_;  // t x s test features
  double psi_ref_;      // psi of the full fit, via the same evaluation path
};

}  // namespace

std::unique_ptr<ErrorFunctional> krr_bootstrap_functional(
    const RidgeProblem& problem, const Eigen::MatrixXd& z,
    const FeatureMap& map) {
  return std::make_unique<KrrFunctional>(problem, z, map);
}

}  // namespace rfferr
