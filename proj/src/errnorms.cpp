#include "rfferr/errnorms.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace rfferr {

namespace {

Eigen::VectorXd resample_weights(Eigen::Index s, const std::vector<int>& idx) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(s, -1.0);
  for (int i : idx) {
    if (i < 0 || i >= s) {
      throw std::invalid_argument("resample index out of range");
    }
    w[i] += 1.0;
  }
  return w;
}

using MatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

// Power iteration on M^2 for a symmetric operator M given by `apply`.
OpNormEstimate power_opnorm(Eigen::Index n, const MatVec& apply, double tol,
                            int max_iter, RngStream& rng) {
  if (!(tol > 0.0)) throw std::invalid_argument("power method: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("power method: max_iter must be >= 1");

  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  v.normalize();

  Eigen::VectorXd w(n), u(n);
  double prev = -1.0;
  double est = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    apply(v, w);
    est = w.norm();  // sqrt(v^T M^2 v) for unit v
    if (est == 0.0) return {0.0, true, it};
    apply(w, u);
    const double un = u.norm();
    if (un == 0.0) return {est, true, it};
    v = u / un;
    if (prev >= 0.0 && std::abs(est - prev) <= tol * est) {
      return {est, true, it};
    }
    prev = est;
  }
  return {est, false, max_iter};
}

}  // namespace

double linf_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("linf_error: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

int default_power_max_iter(Eigen::Index n) {
  return static_cast<int>(std::ceil(10.0 * std::log(static_cast<double>(n) + 1.0)));
}

OpNormEstimate opnorm_diff_powermethod(const Eigen::MatrixXd& z_star,
                                       const Eigen::MatrixXd& z, double tol,
                                       int max_iter, RngStream& rng) {
  if (z_star.rows() != z.rows() || z_star.cols() != z.cols()) {
    throw std::invalid_argument("opnorm_diff_powermethod: shape mismatch");
  }
  Eigen::VectorXd t1(z.cols()), t2(z.cols());
  const MatVec apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    t1.noalias() = z_star.transpose() * x;
    t2.noalias() = z.transpose() * x;
    out.noalias() = z_star * t1;
    out.noalias() -= z * t2;
  };
  return power_opnorm(z.rows(), apply, tol, max_iter, rng);
}

OpNormEstimate opnorm_diff_resampled(const Eigen::MatrixXd& z,
                                     const std::vector<int>& idx, double tol,
                                     int max_iter, RngStream& rng) {
  const Eigen::VectorXd w = resample_weights(z.cols(), idx);
  Eigen::VectorXd t(z.cols());
  const MatVec apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    t.noalias() = z.transpose() * x;
    t.array() *= w.array();
    out.noalias() = z * t;
  };
  return power_opnorm(z.rows(), apply, tol, max_iter, rng);
}

double linf_diff_resampled(const Eigen::MatrixXd& z,
                           const std::vector<int>& idx) {
  const Eigen::VectorXd w = resample_weights(z.cols(), idx);
  const Eigen::MatrixXd scaled = z * w.asDiagonal();
  Eigen::MatrixXd diff(z.rows(), z.rows());
  diff.noalias() = scaled * z.transpose();
  return diff.cwiseAbs().maxCoeff();
}

QrFactor qr_factor(const Eigen::MatrixXd& z) {
  const Eigen::Index n = z.rows();
  const Eigen::Index s = z.cols();
  if (n < s) throw std::invalid_argument("qr_factor: requires n >= s");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  QrFactor f;
  f.q = qr.householderQ() * Eigen::MatrixXd::Identity(n, s);
  f.r = qr.matrixQR().topRows(s).triangularView<Eigen::Upper>();
  return f;
}

double opnorm_diff_qr(const Eigen::MatrixXd& r, const std::vector<int>& idx) {
  if (r.rows() != r.cols()) {
    throw std::invalid_argument("opnorm_diff_qr: R must be square");
  }
  if (static_cast<Eigen::Index>(idx.size()) != r.cols()) {
    throw std::invalid_argument("opnorm_diff_qr: idx length must equal s");
  }
  const Eigen::VectorXd w = resample_weights(r.cols(), idx);
  Eigen::MatrixXd diff(r.rows(), r.rows());
  diff.noalias() = (r * w.asDiagonal()) * r.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(diff,
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

namespace {

class LinfFunctional final : public ErrorFunctional {
 public:
  explicit LinfFunctional(const Eigen::MatrixXd& z) : z_(z) {}
  double operator()(const std::vector<int>& idx, RngStream&) const override {
    return linf_diff_resampled(z_, idx);
  }

 private:
  const Eigen::MatrixXd& z_;
};

class OpNormFunctional final : public ErrorFunctional {
 public:
  OpNormFunctional(const Eigen::MatrixXd& z, double tol, int max_iter)
      : z_(z),
        tol_(tol),
        max_iter_(max_iter > 0 ? max_iter : default_power_max_iter(z.rows())) {}

  double operator()(const std::vector<int>& idx, RngStream& rng) const override {
    return opnorm_diff_resampled(z_, idx, tol_, max_iter_, rng).value;
  }

 private:
  const Eigen::MatrixXd& z_;
  double tol_;
  int max_iter_;
};

}  // namespace

std::unique_ptr<ErrorFunctional> linf_matrix_functional(
    const Eigen::MatrixXd& z) {
  return std::make_unique<LinfFunctional>(z);
}

std::unique_ptr<ErrorFunctional> opnorm_matrix_functional(
    const Eigen::MatrixXd& z, double tol, int max_iter) {
  return std::make_unique<OpNormFunctional>(z, tol, max_iter);
}

}  // namespace rfferr
