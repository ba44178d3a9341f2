#pragma once

#include <Eigen/Dense>
#include <memory>

#include "rfferr/bootstrap.hpp"
#include "rfferr/features.hpp"
#include "rfferr/kernels.hpp"

namespace rfferr {

struct RidgeProblem {
  Eigen::MatrixXd x_train;  // n x d
  Eigen::VectorXd y_train;  // n
  Eigen::MatrixXd x_test;   // t x d
  Eigen::VectorXd y_test;   // t
  double lambda = 1.0;

  void validate() const;  // throws on inconsistent shapes or lambda <= 0
};

/// Solves (K + lambda I) beta = y for the exact kernel ridge coefficients.
Eigen::VectorXd fit_exact(const RidgeProblem& problem, const Kernel& kernel);

/// Mean-squared test error of the exact predictor f(x) = sum_i beta_i k(x_i, x).
double psi_exact(const RidgeProblem& problem, const Kernel& kernel);

struct RffRidgeFit {
  Eigen::VectorXd beta;  // s, solves (Z^T Z + lambda I) beta = Z^T y
  FeatureMap map;
};

/// Ridge fit in the random-feature basis; z is the normalized n x s feature
/// matrix of x_train under `map`.
RffRidgeFit fit_rff(const RidgeProblem& problem, const Eigen::MatrixXd& z,
                    const FeatureMap& map);

/// Mean-squared test error of the feature predictor f(x) = z(x)^T beta with
/// z(x) the normalized feature row of x.
double psi_rff(const RffRidgeFit& fit, const RidgeProblem& problem);

/// Bootstrap functional for the test-MSE difference psi(resampled fit) -
/// psi(full fit). Precomputes the QR factor of z, b = z^T y and the test
/// feature matrix once; each resample solves
/// (R(:,idx)^T R(:,idx) + lambda I) beta* = b(idx). Requires n >= s.
/// Returns signed deltas; the bootstrap config's mode chooses |.| vs signed.
std::unique_ptr<ErrorFunctional> krr_bootstrap_functional(
    const RidgeProblem& problem, const Eigen::MatrixXd& z,
    const FeatureMap& map);

}  // namespace rfferr
