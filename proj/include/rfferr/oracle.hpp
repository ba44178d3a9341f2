#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rfferr/bootstrap.hpp"
#include "rfferr/kernels.hpp"
#include "rfferr/mmd.hpp"
#include "rfferr/ridge.hpp"

namespace rfferr {

/// Monte Carlo estimate of a true error quantile: one independent feature map
/// per trial, the realized error of each, and their empirical quantile.
/// Validation-only machinery; intended for small instances (n <~ 2000).
struct OracleResult {
  int trials = 0;
  std::vector<double> error_samples;  // one per trial, in trial order
  double quantile = 0.0;              // empirical (1 - alpha) quantile
  double alpha = 0.0;
};

enum class MatrixNorm { Linf, Op };

/// True matrix errors ||Z Z^T - K||. The operator norm is evaluated by dense
/// symmetric eigendecomposition, independent of the power-method path.
OracleResult oracle_matrix_quantile(const Eigen::MatrixXd& points,
                                    const Kernel& kernel, MatrixNorm norm,
                                    int s, double alpha, int trials,
                                    std::uint64_t seed, int workers = 1);

/// True functional errors psi(k~) - psi(k) for ridge test MSE.
OracleResult oracle_krr_quantile(const RidgeProblem& problem,
                                 const Kernel& kernel, int s, double alpha,
                                 int trials, std::uint64_t seed,
                                 ErrorMode mode = ErrorMode::Signed,
                                 int workers = 1);

/// True statistic errors |T~ - T| for the two-sample test.
OracleResult oracle_mmd_quantile(const MmdProblem& problem,
                                 const Kernel& kernel, int s, double alpha,
                                 int trials, std::uint64_t seed,
                                 int workers = 1);

}  // namespace rfferr
