#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "rfferr/datasets.hpp"
#include "rfferr/errnorms.hpp"
#include "rfferr/features.hpp"

using namespace rfferr;

namespace {

double dense_opnorm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

Eigen::MatrixXd random_features(int n, int s, std::uint64_t seed) {
  Kernel k(KernelFamily::Gaussian, 1.0);
  RngStream rng(seed);
  PointSet pts = gen_swiss_roll(n, rng);
  FeatureMap map = make_feature_map(k, 3, s, rng);
  return build_feature_matrix(map, pts.points);
}

std::vector<int> identity_idx(int s) {
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

std::vector<int> random_idx(int s, RngStream& rng) {
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (auto& v : idx) v = static_cast<int>(rng.uniform_index(s));
  return idx;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& z, const std::vector<int>& idx) {
  Eigen::MatrixXd out(z.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t l = 0; l < idx.size(); ++l) {
    out.col(static_cast<Eigen::Index>(l)) = z.col(idx[l]);
  }
  return out;
}

}  // namespace

TEST_CASE("linf_error basics") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  CHECK(linf_error(a, a) == 0.0);
  Eigen::MatrixXd b(2, 2);
  b << 1.0, 0.5, 0.5, 1.0;
  CHECK(linf_error(a, b) == 0.5);
  CHECK_THROWS_AS(linf_error(a, Eigen::MatrixXd::Zero(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("linf_error equals the brute-force scan") {
  RngStream rng(3);
  Eigen::MatrixXd a(5, 5), b(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      a(i, j) = rng.uniform(-1.0, 1.0);
      b(i, j) = rng.uniform(-1.0, 1.0);
    }
  double expected = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      expected = std::max(expected, std::abs(a(i, j) - b(i, j)));
  CHECK(linf_error(a, b) == expected);
}

TEST_CASE("power method trivial cases") {
  RngStream rng(7);
  Eigen::MatrixXd z = random_features(30, 10, 71);
  auto same = opnorm_diff_powermethod(z, z, 1e-6, 100, rng);
  CHECK(same.value == 0.0);
  CHECK(same.converged);

  // rank-one difference: ||w w^T||_op = ||w||^2
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(25, 1);
  Eigen::MatrixXd w(25, 1);
  for (int i = 0; i < 25; ++i) w(i, 0) = rng.uniform(-1.0, 1.0);
  auto r1 = opnorm_diff_powermethod(w, zero, 1e-12, 200, rng);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(w.squaredNorm()).epsilon(1e-10));

  CHECK_THROWS_AS(opnorm_diff_powermethod(z, zero, 1e-6, 50, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(opnorm_diff_powermethod(z, z, -1.0, 50, rng),
                  std::invalid_argument);
}

TEST_CASE("power method tracks the dense eigensolver") {
  RngStream rng(13);
  Eigen::MatrixXd z = random_features(100, 20, 77);
  Eigen::MatrixXd z_star = random_features(100, 20, 78);
  const double exact =
      dense_opnorm(z_star * z_star.transpose() - z * z.transpose());
  auto est = opnorm_diff_powermethod(z_star, z, 1e-6, 1000, rng);
  CHECK(est.converged);
  CHECK(std::abs(est.value - exact) <= 0.01 * exact);
}

TEST_CASE("power method brackets the true norm") {
  // Rayleigh-quotient estimates approach from below; converged runs sit
  // inside [(1 - tol') true, true] for a small effective tol'
  for (std::uint64_t seed : {101ull, 102ull, 103ull, 104ull, 105ull}) {
    RngStream rng(seed);
    Eigen::MatrixXd z = random_features(150, 25, seed * 3 + 1);
    const auto idx = random_idx(25, rng);
    Eigen::MatrixXd z_star = gather(z, idx);
    const double exact =
        dense_opnorm(z_star * z_star.transpose() - z * z.transpose());
    auto est = opnorm_diff_powermethod(z_star, z, 1e-8, 20000, rng);
    CHECK(est.converged);
    CHECK(est.value <= exact * (1.0 + 1e-8));
    CHECK(est.value >= exact * (1.0 - 1e-4));
  }
}

TEST_CASE("count-weighted resample operator matches the generic path") {
  RngStream rng(19);
  Eigen::MatrixXd z = random_features(60, 12, 79);
  for (int rep = 0; rep < 5; ++rep) {
    const auto idx = random_idx(12, rng);
    const double generic =
        opnorm_diff_powermethod(gather(z, idx), z, 1e-10, 50000, rng).value;
    const double weighted =
        opnorm_diff_resampled(z, idx, 1e-10, 50000, rng).value;
    CHECK(weighted == doctest::Approx(generic).epsilon(1e-7));
  }
}

TEST_CASE("linf resample fast path equals the explicit computation") {
  RngStream rng(23);
  Eigen::MatrixXd z = random_features(40, 9, 80);
  for (int rep = 0; rep < 10; ++rep) {
    const auto idx = random_idx(9, rng);
    Eigen::MatrixXd z_star = gather(z, idx);
    Eigen::MatrixXd a = z_star * z_star.transpose();
    Eigen::MatrixXd b = z * z.transpose();
    CHECK(linf_diff_resampled(z, idx) ==
          doctest::Approx(linf_error(a, b)).epsilon(1e-12));
  }
  CHECK(linf_diff_resampled(z, identity_idx(9)) == 0.0);
  std::vector<int> bad = identity_idx(9);
  bad[0] = 9;
  CHECK_THROWS_AS(linf_diff_resampled(z, bad), std::invalid_argument);
}

TEST_CASE("thin QR factorization") {
  RngStream rng(29);

  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(7, 4);
  padded.topRows(4).setIdentity();
  QrFactor f1 = qr_factor(padded);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(f1.r(i, i)) == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 0; j < i; ++j) CHECK(std::abs(f1.r(i, j)) <= 1e-14);
  }

  // orthonormal-columns input: R is diagonal with unit magnitudes
  Eigen::MatrixXd rnd(50, 10);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 10; ++j) rnd(i, j) = rng.normal();
  QrFactor base = qr_factor(rnd);
  QrFactor f2 = qr_factor(base.q);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(f2.r(i, i)) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = i + 1; j < 10; ++j) CHECK(std::abs(f2.r(i, j)) <= 1e-12);
  }

  // reconstruction and orthonormality on a generic matrix
  Eigen::MatrixXd qtq = base.q.transpose() * base.q;
  qtq.diagonal().array() -= 1.0;
  CHECK(qtq.cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(linf_error(base.q * base.r, rnd) <= 1e-10 * rnd.cwiseAbs().maxCoeff());
  CHECK(qr_factor(rnd).r == base.r);

  CHECK_THROWS_AS(qr_factor(Eigen::MatrixXd::Zero(3, 5)),
                  std::invalid_argument);
}

TEST_CASE("QR-path resampled operator norm") {
  RngStream rng(31);
  Eigen::MatrixXd z = random_features(60, 12, 81);
  QrFactor f = qr_factor(z);

  CHECK(opnorm_diff_qr(f.r, identity_idx(12)) == 0.0);

  // hand instance: s = 2, R = I, idx repeats the first column
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  CHECK(opnorm_diff_qr(eye, {0, 0}) == doctest::Approx(1.0).epsilon(1e-14));

  for (int rep = 0; rep < 10; ++rep) {
    const auto idx = random_idx(12, rng);
    const double via_r = opnorm_diff_qr(f.r, idx);
    const auto via_power =
        opnorm_diff_powermethod(gather(z, idx), z, 1e-10, 50000, rng);
    CHECK(via_power.converged);
    CHECK(std::abs(via_r - via_power.value) <= 1e-8 * (1.0 + via_r));
  }

  std::vector<int> bad = identity_idx(12);
  bad[3] = -1;
  CHECK_THROWS_AS(opnorm_diff_qr(f.r, bad), std::invalid_argument);
  CHECK_THROWS_AS(opnorm_diff_qr(f.r, identity_idx(11)), std::invalid_argument);
}

TEST_CASE("norm axioms on random instances") {
  RngStream rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXd a(20, 20), b(20, 20), c(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        a(i, j) = rng.uniform(-1.0, 1.0);
        b(i, j) = rng.uniform(-1.0, 1.0);
        c(i, j) = rng.uniform(-1.0, 1.0);
      }
    CHECK(linf_error(a, b) >= 0.0);
    CHECK(linf_error(a, b) == linf_error(b, a));
    CHECK(linf_error(a, c) <= linf_error(a, b) + linf_error(b, c) + 1e-15);
  }

  // operator-norm counterpart through the matrix-free difference operator
  Eigen::MatrixXd z1 = random_features(40, 8, 82);
  Eigen::MatrixXd z2 = random_features(40, 8, 83);
  Eigen::MatrixXd z3 = random_features(40, 8, 84);
  auto norm12 = opnorm_diff_powermethod(z1, z2, 1e-9, 20000, rng);
  auto norm21 = opnorm_diff_powermethod(z2, z1, 1e-9, 20000, rng);
  auto norm13 = opnorm_diff_powermethod(z1, z3, 1e-9, 20000, rng);
  auto norm32 = opnorm_diff_powermethod(z3, z2, 1e-9, 20000, rng);
  CHECK(norm12.value == doctest::Approx(norm21.value).epsilon(1e-6));
  CHECK(norm12.value <= norm13.value + norm32.value + 1e-6 * norm12.value);
}
