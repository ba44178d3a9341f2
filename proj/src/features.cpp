#include "rfferr/features.hpp"

#include <cmath>
#include <stdexcept>

namespace rfferr {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

FeatureMap make_feature_map(const Kernel& kernel, int d, int s,
                            RngStream& rng) {
  auto samples = sample_spectral(kernel, d, s, rng);
  FeatureMap map;
  map.frequencies.resize(s, d);
  map.phases.resize(s);
  for (int i = 0; i < s; ++i) {
    map.frequencies.row(i) = samples[static_cast<std::size_t>(i)].frequency;
    map.phases[i] = samples[static_cast<std::size_t>(i)].phase;
  }
  return map;
}

double eval_feature(const FeatureMap& map, int i, const Eigen::VectorXd& x) {
  if (i < 0 || i >= map.count()) {
    throw std::invalid_argument("eval_feature: feature index out of range");
  }
  if (x.size() != map.dim()) {
    throw std::invalid_argument("eval_feature: dimension mismatch");
  }
  return kSqrt2 * std::cos(map.frequencies.row(i).dot(x) + map.phases[i]);
}

Eigen::MatrixXd build_feature_matrix(const FeatureMap& map,
                                     const Eigen::MatrixXd& points) {
  if (points.cols() != map.dim()) {
    throw std::invalid_argument("build_feature_matrix: dimension mismatch");
  }
  const int s = map.count();
  Eigen::MatrixXd z = points * map.frequencies.transpose();  // n x s
  z.rowwise() += map.phases.transpose();
  z = (std::sqrt(2.0 / s) * z.array().cos()).matrix();
  return z;
}

double approx_kernel(const FeatureMap& map, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y) {
  if (x.size() != map.dim() || y.size() != map.dim()) {
    throw std::invalid_argument("approx_kernel: dimension mismatch");
  }
  const int s = map.count();
  const Eigen::VectorXd px = map.frequencies * x + map.phases;
  const Eigen::VectorXd py = map.frequencies * y + map.phases;
  return 2.0 * px.array().cos().matrix().dot(py.array().cos().matrix()) / s;
}

Eigen::MatrixXd exact_kernel_matrix(const Kernel& kernel,
                                    const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = kernel.eval_displacement(
          (points.row(i) - points.row(j)).transpose());
      k(i, j) = v;
      k(j, i) = v;  // mirrored, so symmetry is exact
    }
  }
  return k;
}

Eigen::MatrixXd exact_kernel_cross(const Kernel& kernel,
                                   const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("exact_kernel_cross: dimension mismatch");
  }
  Eigen::MatrixXd k(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      k(i, j) = kernel.eval_displacement((a.row(i) - b.row(j)).transpose());
    }
  }
  return k;
}

}  // namespace rfferr
