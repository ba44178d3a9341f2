#pragma once

#include <Eigen/Dense>

#include "rfferr/kernels.hpp"
#include "rfferr/rng.hpp"

namespace rfferr {

/// The s random cosine features Z_i(x) = sqrt(2) cos(<x, W_i> + U_i),
/// stored as a frequency matrix (one row per feature) and a phase vector.
/// Immutable after construction; evaluation is pure.
struct FeatureMap {
  Eigen::MatrixXd frequencies;  // s x d
  Eigen::VectorXd phases;       // s

  int count() const { return static_cast<int>(frequencies.rows()); }
  int dim() const { return static_cast<int>(frequencies.cols()); }
};

FeatureMap make_feature_map(const Kernel& kernel, int d, int s, RngStream& rng);

/// Unnormalized feature value Z_i(x); |Z_i(x)| <= sqrt(2).
double eval_feature(const FeatureMap& map, int i, const Eigen::VectorXd& x);

/// n x s matrix with entry (j, i) = (1/sqrt(s)) Z_i(x_j); the sqrt(s)
/// normalization lives here so that the approximate kernel matrix is Z Z^T.
Eigen::MatrixXd build_feature_matrix(const FeatureMap& map,
                                     const Eigen::MatrixXd& points);

/// k~(x, x') = (1/s) sum_i Z_i(x) Z_i(x').
double approx_kernel(const FeatureMap& map, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y);

/// Symmetric kernel matrix with unit diagonal, entries k(x_j, x_j').
Eigen::MatrixXd exact_kernel_matrix(const Kernel& kernel,
                                    const Eigen::MatrixXd& points);

/// Rectangular kernel matrix with entries k(a_i, b_j).
Eigen::MatrixXd exact_kernel_cross(const Kernel& kernel,
                                   const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& b);

}  // namespace rfferr
