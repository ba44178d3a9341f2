#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rfferr/bootstrap.hpp"
#include "rfferr/datasets.hpp"
#include "rfferr/errnorms.hpp"
#include "rfferr/features.hpp"

using namespace rfferr;

namespace {

class ConstantFunctional final : public ErrorFunctional {
 public:
  explicit ConstantFunctional(double v) : v_(v) {}
  double operator()(const std::vector<int>&, RngStream&) const override {
    return v_;
  }

 private:
  double v_;
};

class ThrowingFunctional final : public ErrorFunctional {
 public:
  double operator()(const std::vector<int>&, RngStream&) const override {
    throw std::runtime_error("boom");
  }
};

// signed toy statistic: first index minus second
class SignedFunctional final : public ErrorFunctional {
 public:
  double operator()(const std::vector<int>& idx, RngStream&) const override {
    return static_cast<double>(idx[0]) - static_cast<double>(idx[1]);
  }
};

}  // namespace

TEST_CASE("empirical quantile definition") {
  std::vector<double> ten;
  for (int i = 10; i >= 1; --i) ten.push_back(i);
  CHECK(empirical_quantile(ten, 0.9) == 9.0);
  CHECK(empirical_quantile(ten, 0.05) == 1.0);
  CHECK(empirical_quantile(ten, 0.999) == 10.0);

  std::vector<double> constant(37, 3.25);
  for (double level : {0.01, 0.5, 0.9, 0.99}) {
    CHECK(empirical_quantile(constant, level) == 3.25);
  }

  CHECK_THROWS_AS(empirical_quantile({}, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(empirical_quantile(ten, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_quantile(ten, 1.0), std::invalid_argument);
}

TEST_CASE("empirical quantile matches a brute-force scan") {
  RngStream rng(61);
  std::vector<double> values(200);
  for (auto& v : values) v = rng.uniform(-5.0, 5.0);
  for (double level : {0.5, 0.9, 0.95, 0.123}) {
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    double expected = sorted.back();
    for (double a : sorted) {
      const double frac =
          static_cast<double>(std::count_if(values.begin(), values.end(),
                                            [&](double v) { return v <= a; })) /
          static_cast<double>(values.size());
      if (frac >= level) {
        expected = a;
        break;
      }
    }
    CHECK(empirical_quantile(values, level) == expected);
  }
}

TEST_CASE("resample indices") {
  RngStream a(9), b(9);
  auto one = resample_indices(1, a);
  CHECK(one == std::vector<int>{0});

  auto i1 = resample_indices(64, a);
  resample_indices(1, b);  // keep streams aligned
  auto i2 = resample_indices(64, b);
  CHECK(i1 == i2);
  CHECK_THROWS_AS(resample_indices(0, a), std::invalid_argument);
}

TEST_CASE("resample index frequencies are uniform") {
  const int s = 5;
  const int draws = 100000;
  RngStream rng(73);
  std::vector<int> counts(s, 0);
  for (int r = 0; r < draws; ++r) {
    for (int v : resample_indices(s, rng)) counts[static_cast<std::size_t>(v)]++;
  }
  const double total = static_cast<double>(draws) * s;
  const double p = 1.0 / s;
  const double se = std::sqrt(p * (1.0 - p) * total);
  for (int c : counts) {
    CHECK(std::abs(c - total * p) <= 4.0 * se);
  }
}

TEST_CASE("bootstrap of a zero functional is exactly zero") {
  BootstrapConfig cfg;
  cfg.iterations = 25;
  cfg.seed = 1;
  auto res = run_bootstrap(ConstantFunctional(0.0), 10, cfg);
  CHECK(res.estimate == 0.0);
  for (double v : res.pseudo_errors) CHECK(v == 0.0);
}

TEST_CASE("identical feature columns resample to zero error") {
  // one repeated spectral sample: all columns of Z coincide, so any
  // with-replacement resample reproduces Z Z^T exactly
  FeatureMap map;
  map.frequencies = Eigen::MatrixXd::Constant(8, 3, 0.37);
  map.phases = Eigen::VectorXd::Constant(8, 1.1);
  RngStream rng(5);
  PointSet pts = gen_swiss_roll(12, rng);
  Eigen::MatrixXd z = build_feature_matrix(map, pts.points);

  BootstrapConfig cfg;
  cfg.iterations = 40;
  cfg.seed = 2;
  auto res = run_bootstrap(*linf_matrix_functional(z), 8, cfg);
  CHECK(res.estimate == 0.0);
}

TEST_CASE("bootstrap output is schedule independent") {
  Kernel k(KernelFamily::Gaussian, 1.0);
  RngStream rng(11);
  PointSet pts = gen_swiss_roll(30, rng);
  FeatureMap map = make_feature_map(k, 3, 16, rng);
  Eigen::MatrixXd z = build_feature_matrix(map, pts.points);

  BootstrapConfig cfg;
  cfg.iterations = 33;
  cfg.alpha = 0.2;
  cfg.seed = 77;
  auto serial = run_bootstrap(*linf_matrix_functional(z), 16, cfg, 1);
  auto threaded = run_bootstrap(*linf_matrix_functional(z), 16, cfg, 3);
  CHECK(serial.pseudo_errors == threaded.pseudo_errors);
  CHECK(serial.estimate == threaded.estimate);
}

TEST_CASE("bootstrap failures carry the iteration index") {
  BootstrapConfig cfg;
  cfg.iterations = 4;
  try {
    run_bootstrap(ThrowingFunctional(), 3, cfg);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bootstrap iteration 0") != std::string::npos);
    CHECK(msg.find("boom") != std::string::npos);
  }
}

TEST_CASE("error mode controls the sign treatment") {
  BootstrapConfig cfg;
  cfg.iterations = 64;
  cfg.seed = 3;
  cfg.mode = ErrorMode::Absolute;
  auto abs_res = run_bootstrap(SignedFunctional(), 7, cfg);
  for (double v : abs_res.pseudo_errors) CHECK(v >= 0.0);

  cfg.mode = ErrorMode::Signed;
  auto signed_res = run_bootstrap(SignedFunctional(), 7, cfg);
  CHECK(std::any_of(signed_res.pseudo_errors.begin(),
                    signed_res.pseudo_errors.end(),
                    [](double v) { return v < 0.0; }));
}

TEST_CASE("estimate is a member with the right rank") {
  Kernel k(KernelFamily::Laplacian, 4.0);
  RngStream rng(13);
  PointSet pts = gen_swiss_roll(20, rng);
  FeatureMap map = make_feature_map(k, 3, 12, rng);
  Eigen::MatrixXd z = build_feature_matrix(map, pts.points);

  for (double alpha : {0.05, 0.1, 0.37}) {
    BootstrapConfig cfg;
    cfg.iterations = 57;
    cfg.alpha = alpha;
    cfg.seed = 1000 + static_cast<std::uint64_t>(alpha * 100);
    auto res = run_bootstrap(*linf_matrix_functional(z), 12, cfg);
    CHECK(std::count(res.pseudo_errors.begin(), res.pseudo_errors.end(),
                     res.estimate) >= 1);
    const auto below =
        std::count_if(res.pseudo_errors.begin(), res.pseudo_errors.end(),
                      [&](double v) { return v <= res.estimate; });
    CHECK(below >= static_cast<long>(
                       std::ceil((1.0 - alpha) * cfg.iterations) - 1e-9));
    CHECK(res.quantile(1.0 - alpha) == res.estimate);
  }
}

TEST_CASE("bootstrap argument validation") {
  BootstrapConfig cfg;
  cfg.iterations = 0;
  CHECK_THROWS_AS(run_bootstrap(ConstantFunctional(1.0), 5, cfg),
                  std::invalid_argument);
  cfg.iterations = 10;
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(run_bootstrap(ConstantFunctional(1.0), 5, cfg),
                  std::invalid_argument);
  cfg.alpha = 0.1;
  CHECK_THROWS_AS(run_bootstrap(ConstantFunctional(1.0), 0, cfg),
                  std::invalid_argument);
}

TEST_CASE("extrapolation rule") {
  CHECK(extrapolate(0.73, 50, 50) == 0.73);
  CHECK(extrapolate(0.8, 50, 200) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(extrapolate(1.0, 0, 10), std::invalid_argument);
}

TEST_CASE("feature count selection") {
  CHECK(select_feature_count(0.8, 50, 0.08) == 5000);
  CHECK(select_feature_count(0.3, 100, 0.1) == 900);
  CHECK(select_feature_count(0.05, 50, 0.1) == 50);   // already under tolerance
  CHECK(select_feature_count(0.1, 50, 0.1) == 50);    // exactly at tolerance
  CHECK_THROWS_AS(select_feature_count(0.5, 50, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(select_feature_count(-0.5, 50, 0.1), std::invalid_argument);
}
