#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "rfferr/bootstrap.hpp"
#include "rfferr/rng.hpp"

namespace rfferr {

/// Max absolute entrywise difference between equal-shaped matrices.
double linf_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct OpNormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Default power-iteration budget, O(log n).
int default_power_max_iter(Eigen::Index n);

/// ||Z* (Z*)^T - Z Z^T||_op, matrix-free. The difference is symmetric
/// indefinite, so each step applies the operator twice (power iteration on
/// M^2); the estimate is sqrt of the Rayleigh quotient of M^2, which
/// approaches the norm from below. Stops when the relative change drops
/// under tol or after max_iter steps (then flagged unconverged).
OpNormEstimate opnorm_diff_powermethod(const Eigen::MatrixXd& z_star,
                                       const Eigen::MatrixXd& z, double tol,
                                       int max_iter, RngStream& rng);

/// Same operator expressed through resample counts: M = Z diag(w) Z^T with
/// w_i = (#occurrences of i in idx) - 1. Used by the bootstrap functional;
/// two products per matvec instead of four.
OpNormEstimate opnorm_diff_resampled(const Eigen::MatrixXd& z,
                                     const std::vector<int>& idx, double tol,
                                     int max_iter, RngStream& rng);

/// ||Z(:,idx) Z(:,idx)^T - Z Z^T||_inf via the same count-weighted form.
double linf_diff_resampled(const Eigen::MatrixXd& z,
                           const std::vector<int>& idx);

/// Thin QR of an n x s matrix (n >= s) by Householder reflections.
/// ||Q^T Q - I||_inf <= 1e-10 and ||Q R - Z||_inf <= 1e-10 max|Z|.
struct QrFactor {
  Eigen::MatrixXd q;  // n x s, orthonormal columns
  Eigen::MatrixXd r;  // s x s, upper triangular
};

QrFactor qr_factor(const Eigen::MatrixXd& z);

/// ||R(:,idx) R(:,idx)^T - R R^T||_op by dense symmetric eigendecomposition;
/// equals the n x n resampled difference norm by unitary invariance.
double opnorm_diff_qr(const Eigen::MatrixXd& r, const std::vector<int>& idx);

/// Bootstrap functionals for the two matrix norms, bound to a feature matrix
/// (held by reference; must outlive the functional).
std::unique_ptr<ErrorFunctional> linf_matrix_functional(const Eigen::MatrixXd& z);
std::unique_ptr<ErrorFunctional> opnorm_matrix_functional(
    const Eigen::MatrixXd& z, double tol = 1e-4, int max_iter = 0 /* 0 = default */);

}  // namespace rfferr
