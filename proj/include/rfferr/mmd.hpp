#pragma once

#include <Eigen/Dense>
#include <memory>

#include "rfferr/bootstrap.hpp"
#include "rfferr/features.hpp"
#include "rfferr/kernels.hpp"

namespace rfferr {

/// Two equally sized samples for the two-sample test.
struct MmdProblem {
  Eigen::MatrixXd x;  // n x d
  Eigen::MatrixXd y;  // n x d

  void validate() const;  // n >= 2, equal sizes and dimensions
};

/// Unbiased squared-MMD statistic
/// T = sum_{i != i'} k(x_i, x_i')/(n(n-1)) - (2/n^2) sum k(x_i, y_j)
///     + sum_{j != j'} k(y_j, y_j')/(n(n-1)).
double mmd_exact(const MmdProblem& problem, const Kernel& kernel);

/// T with k replaced by the feature approximation k~, term by term (O(n^2 s)).
double mmd_rff_quadratic(const MmdProblem& problem, const FeatureMap& map);

/// Algebraically identical linear-time form built from the feature means
/// zbar and per-point feature norms (O(n s)).
double mmd_rff_linear(const MmdProblem& problem, const FeatureMap& map);

/// Bootstrap functional for the statistic difference T~(resampled) - T~.
/// Both samples are featurized with the one shared map and resampled with the
/// same index vector. Returns signed differences; the config mode applies
/// the absolute value (the default for this statistic).
std::unique_ptr<ErrorFunctional> mmd_bootstrap_functional(
    const MmdProblem& problem, const FeatureMap& map);

/// Acceptance-region cutoff of the level-alpha test, 4 / sqrt(-m ln(alpha)).
/// Natural logarithm; the source formula leaves the base implicit.
double mmd_test_cutoff(int m, double alpha);

}  // namespace rfferr
