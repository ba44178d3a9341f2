#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rfferr/rng.hpp"

namespace rfferr {

enum class KernelFamily { Gaussian, Laplacian, Cauchy };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

/// Shift-invariant kernel, normalized so k(x, x) = 1.
///
/// Families and their bandwidth parameter `scale`:
///   Gaussian:  k(x, x') = exp(-||x - x'||_2^2 / (2 sigma^2)),   scale = sigma
///   Laplacian: k(x, x') = exp(-||x - x'||_1 / gamma),           scale = gamma
///   Cauchy:    k(x, x') = prod_j 1 / (1 + (x_j - x'_j)^2/gamma), scale = gamma
class Kernel {
 public:
  Kernel(KernelFamily family, double scale);

  KernelFamily family() const { return family_; }
  double scale() const { return scale_; }

  double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Kernel value at displacement delta = x - x'.
  double eval_displacement(const Eigen::VectorXd& delta) const;

 private:
  KernelFamily family_;
  double scale_;
};

/// One draw from the spectral distribution rho of the kernel, plus the
/// uniform phase that defines the random cosine feature.
struct SpectralSample {
  Eigen::VectorXd frequency;  // in R^d, distributed per the kernel family
  double phase;               // in [0, 2*pi)
};

/// `count` i.i.d. draws from the spectral distribution in dimension d.
/// Frequency coordinate laws: Gaussian kernel -> Normal(0, 1/sigma^2),
/// Laplacian -> Cauchy(0, 1/gamma), Cauchy -> Laplace(0, 1/sqrt(gamma)).
std::vector<SpectralSample> sample_spectral(const Kernel& kernel, int d,
                                            int count, RngStream& rng);

}  // namespace rfferr
