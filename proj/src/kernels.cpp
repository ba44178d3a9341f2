#include "rfferr/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace rfferr {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Laplacian: return "laplacian";
    case KernelFamily::Cauchy: return "cauchy";
  }
  return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "laplacian") return KernelFamily::Laplacian;
  if (name == "cauchy") return KernelFamily::Cauchy;
  throw std::invalid_argument("unknown kernel family: " + name);
}

Kernel::Kernel(KernelFamily family, double scale)
    : family_(family), scale_(scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("kernel scale must be positive");
  }
}

double Kernel::eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != y.size() || x.size() < 1) {
    throw std::invalid_argument("kernel eval: dimension mismatch");
  }
  return eval_displacement(x - y);
}

double Kernel::eval_displacement(const Eigen::VectorXd& delta) const {
  switch (family_) {
    case KernelFamily::Gaussian:
      return std::exp(-delta.squaredNorm() / (2.0 * scale_ * scale_));
    case KernelFamily::Laplacian:
      return std::exp(-delta.lpNorm<1>() / scale_);
    case KernelFamily::Cauchy: {
      double v = 1.0;
      for (Eigen::Index j = 0; j < delta.size(); ++j) {
        v /= 1.0 + delta[j] * delta[j] / scale_;
      }
      return v;
    }
  }
  return 0.0;
}

std::vector<SpectralSample> sample_spectral(const Kernel& kernel, int d,
                                            int count, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_spectral: d must be >= 1");
  if (count < 1) throw std::invalid_argument("sample_spectral: count must be >= 1");

  std::vector<SpectralSample> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd w(d);
    switch (kernel.family()) {
      case KernelFamily::Gaussian:
        for (int j = 0; j < d; ++j) w[j] = rng.normal() / kernel.scale();
        break;
      case KernelFamily::Laplacian:
        for (int j = 0; j < d; ++j) w[j] = rng.cauchy(1.0 / kernel.scale());
        break;
      case KernelFamily::Cauchy: {
        const double b = 1.0 / std::sqrt(kernel.scale());
        for (int j = 0; j < d; ++j) w[j] = rng.laplace(b);
        break;
      }
    }
    samples.push_back({std::move(w), rng.uniform(0.0, kTwoPi)});
  }
  return samples;
}

}  // namespace rfferr
