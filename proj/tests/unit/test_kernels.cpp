#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "rfferr/kernels.hpp"

using namespace rfferr;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

}  // namespace

TEST_CASE("gaussian kernel values") {
  // exp(-||x-x'||^2 / 10) means sigma = sqrt(5)
  Kernel k(KernelFamily::Gaussian, std::sqrt(5.0));
  CHECK(k.eval(vec({1.0, 2.0}), vec({1.0, 2.0})) == 1.0);
  // squared distance exactly 10 -> e^-1
  CHECK(k.eval(vec({std::sqrt(10.0), 0.0}), vec({0.0, 0.0})) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-12));
}

TEST_CASE("laplacian kernel values") {
  Kernel k(KernelFamily::Laplacian, 10.0);
  CHECK(k.eval(vec({0.5}), vec({0.5})) == 1.0);
  CHECK(k.eval(vec({3.0, -4.0}), vec({0.0, 0.0})) ==
        doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
}

TEST_CASE("cauchy kernel values") {
  Kernel k(KernelFamily::Cauchy, 10.0);
  CHECK(k.eval(vec({2.0, 3.0, 4.0}), vec({2.0, 3.0, 4.0})) == 1.0);
  CHECK(k.eval(vec({1.0, 2.0}), vec({0.0, 0.0})) ==
        doctest::Approx(1.0 / (1.1 * 1.4)).epsilon(1e-14));
}

TEST_CASE("kernel input validation") {
  CHECK_THROWS_AS(Kernel(KernelFamily::Gaussian, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel(KernelFamily::Cauchy, -1.0), std::invalid_argument);
  Kernel k(KernelFamily::Gaussian, 1.0);
  CHECK_THROWS_AS(k.eval(vec({1.0, 2.0}), vec({1.0})), std::invalid_argument);
}

TEST_CASE("kernel eval is exactly symmetric") {
  RngStream rng(11);
  for (KernelFamily fam :
       {KernelFamily::Gaussian, KernelFamily::Laplacian, KernelFamily::Cauchy}) {
    Kernel k(fam, 2.5);
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd x(4), y(4);
      for (int j = 0; j < 4; ++j) {
        x[j] = rng.uniform(-3.0, 3.0);
        y[j] = rng.uniform(-3.0, 3.0);
      }
      CHECK(k.eval(x, y) == k.eval(y, x));
      CHECK(k.eval(x, y) > 0.0);
      CHECK(k.eval(x, y) <= 1.0);
    }
  }
}

TEST_CASE("spectral samples are reproducible and valid") {
  Kernel k(KernelFamily::Laplacian, 10.0);
  RngStream a(42), b(42);
  auto s1 = sample_spectral(k, 3, 200, a);
  auto s2 = sample_spectral(k, 3, 200, b);
  REQUIRE(s1.size() == 200);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].frequency == s2[i].frequency);
    CHECK(s1[i].phase == s2[i].phase);
    CHECK(s1[i].phase >= 0.0);
    CHECK(s1[i].phase < kTwoPi);
  }
  CHECK_THROWS_AS(sample_spectral(k, 0, 5, a), std::invalid_argument);
  CHECK_THROWS_AS(sample_spectral(k, 2, 0, a), std::invalid_argument);
}

// Monte Carlo check of the Fourier-pair identity E[cos(<W, delta>)] = k(delta)
// for each family's spectral law, at 4 standard errors of a bounded variable.
TEST_CASE("bochner identity per family") {
  const int count = 100000;
  const double tol = 4.0 / std::sqrt(static_cast<double>(count));
  struct Case {
    KernelFamily family;
    double scale;
  };
  const std::vector<Case> cases = {{KernelFamily::Gaussian, std::sqrt(5.0)},
                                   {KernelFamily::Laplacian, 10.0},
                                   {KernelFamily::Cauchy, 10.0},
                                   {KernelFamily::Gaussian, 1.0}};
  int tag = 0;
  for (const Case& c : cases) {
    Kernel k(c.family, c.scale);
    RngStream rng(900 + tag++);
    auto samples = sample_spectral(k, 1, count, rng);
    for (double delta : {0.5, 1.0, 2.0}) {
      double mean = 0.0;
      for (const auto& s : samples) mean += std::cos(s.frequency[0] * delta);
      mean /= count;
      const double target = k.eval(vec({delta}), vec({0.0}));
      INFO("family ", to_string(c.family), " delta ", delta);
      CHECK(std::abs(mean - target) <= tol);
    }
  }
}

TEST_CASE("family names round trip") {
  for (KernelFamily fam :
       {KernelFamily::Gaussian, KernelFamily::Laplacian, KernelFamily::Cauchy}) {
    CHECK(kernel_family_from_string(to_string(fam)) == fam);
  }
  CHECK_THROWS_AS(kernel_family_from_string("rbf"), std::invalid_argument);
}
