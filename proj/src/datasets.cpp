#include "rfferr/datasets.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace rfferr {

Eigen::Vector3d swiss_roll_point(double t, double h) {
  return {t * std::cos(t), h, t * std::sin(t)};
}

PointSet gen_swiss_roll(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_swiss_roll: n must be >= 1");
  PointSet out;
  out.points.resize(n, 3);
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(1.5 * M_PI, 4.5 * M_PI);
    const double h = rng.uniform(0.0, 21.0);
    out.points.row(i) = swiss_roll_point(t, h).transpose();
  }
  return out;
}

namespace {

Eigen::Vector3d lorenz_rhs(const Eigen::Vector3d& u) {
  constexpr double sigma = 10.0;
  constexpr double rho = 28.0;
  constexpr double beta = 8.0 / 3.0;
  return {sigma * (u[1] - u[0]), u[0] * (rho - u[2]) - u[1],
          u[0] * u[1] - beta * u[2]};
}

}  // namespace

Eigen::Vector3d lorenz_rk4_step(const Eigen::Vector3d& state, double dt) {
  const Eigen::Vector3d k1 = lorenz_rhs(state);
  const Eigen::Vector3d k2 = lorenz_rhs(state + 0.5 * dt * k1);
  const Eigen::Vector3d k3 = lorenz_rhs(state + 0.5 * dt * k2);
  const Eigen::Vector3d k4 = lorenz_rhs(state + dt * k3);
  return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

PointSet gen_lorenz(int n, double dt, const Eigen::Vector3d& x0, int burn_in) {
  if (n < 1) throw std::invalid_argument("gen_lorenz: n must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("gen_lorenz: dt must be positive");
  if (burn_in < 0) throw std::invalid_argument("gen_lorenz: burn_in must be >= 0");

  Eigen::Vector3d state = x0;
  auto step = [&](const char* phase) {
    state = lorenz_rk4_step(state, dt);
    if (!state.allFinite()) {
      throw std::runtime_error(std::string("gen_lorenz: trajectory diverged during ") + phase);
    }
  };
  for (int i = 0; i < burn_in; ++i) step("burn-in");

  PointSet out;
  out.points.resize(n, 3);
  for (int i = 0; i < n; ++i) {
    step("sampling");
    out.points.row(i) = state.transpose();
  }
  return out;
}

std::pair<PointSet, PointSet> gen_gaussian_pair(int n, int d, double var1,
                                                double var2, RngStream& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_gaussian_pair: bad sizes");
  if (!(var1 > 0.0) || !(var2 > 0.0)) {
    throw std::invalid_argument("gen_gaussian_pair: variances must be positive");
  }
  const double sd1 = std::sqrt(var1);
  const double sd2 = std::sqrt(var2);
  PointSet a, b;
  a.points.resize(n, d);
  b.points.resize(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) a.points(i, j) = sd1 * rng.normal();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) b.points(i, j) = sd2 * rng.normal();
  return {std::move(a), std::move(b)};
}

PointSet minmax_scale(const PointSet& input) {
  if (input.points.rows() < 1) {
    throw std::invalid_argument("minmax_scale: empty point set");
  }
  PointSet out = input;
  for (Eigen::Index j = 0; j < out.points.cols(); ++j) {
    const double lo = out.points.col(j).minCoeff();
    const double hi = out.points.col(j).maxCoeff();
    if (hi > lo) {
      out.points.col(j) = (out.points.col(j).array() - lo) / (hi - lo);
    } else {
      out.points.col(j).setZero();
    }
  }
  return out;
}

namespace {

double parse_field(const std::string& token, int line_no) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw std::runtime_error("csv parse error at line " +
                             std::to_string(line_no) + ": invalid numeric field '" +
                             token + "'");
  }
  return v;
}

}  // namespace

PointSet load_csv(const std::string& path, bool has_header,
                  bool last_column_label) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && has_header) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const std::string token =
          line.substr(start, comma == std::string::npos ? std::string::npos
                                                        : comma - start);
      row.push_back(parse_field(token, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("csv parse error at line " +
                               std::to_string(line_no) +
                               ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::invalid_argument("csv file has no data rows: " + path);
  }

  const int n = static_cast<int>(rows.size());
  int d = static_cast<int>(rows.front().size());
  PointSet out;
  if (last_column_label) {
    if (d < 2) {
      throw std::invalid_argument("csv label column requested but file has a single column");
    }
    d -= 1;
    out.labels.resize(n);
    for (int i = 0; i < n; ++i) out.labels[i] = rows[static_cast<std::size_t>(i)].back();
  }
  out.points.resize(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) out.points(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

namespace {

std::vector<int> draw_without_replacement(int total, int take, RngStream& rng) {
  std::vector<int> pool(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) pool[static_cast<std::size_t>(i)] = i;
  // partial Fisher-Yates; the first `take` entries are the sample
  for (int i = 0; i < take; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(
                          static_cast<std::uint64_t>(total - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(take));
  return pool;
}

}  // namespace

PointSet subsample(const PointSet& input, int rows, int cols, RngStream& rng) {
  const int n = static_cast<int>(input.points.rows());
  const int d = static_cast<int>(input.points.cols());
  if (rows < 1 || rows > n || cols < 1 || cols > d) {
    throw std::invalid_argument("subsample: requested size out of range");
  }
  const std::vector<int> ri = draw_without_replacement(n, rows, rng);
  const std::vector<int> ci = draw_without_replacement(d, cols, rng);
  PointSet out;
  out.points.resize(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      out.points(i, j) = input.points(ri[static_cast<std::size_t>(i)], ci[static_cast<std::size_t>(j)]);
  if (input.has_labels()) {
    out.labels.resize(rows);
    for (int i = 0; i < rows; ++i) out.labels[i] = input.labels[ri[static_cast<std::size_t>(i)]];
  }
  return out;
}

std::pair<PointSet, PointSet> gen_synth_regression(int n_train, int n_test,
                                                   int d, double signal_amp,
                                                   double noise_sd,
                                                   RngStream& rng) {
  if (n_train < 1 || n_test < 1 || d < 1) {
    throw std::invalid_argument("gen_synth_regression: bad sizes");
  }
  if (noise_sd < 0.0) {
    throw std::invalid_argument("gen_synth_regression: noise_sd must be >= 0");
  }
  Eigen::VectorXd dir(d);
  for (int j = 0; j < d; ++j) dir[j] = rng.normal();
  dir.normalize();

  auto make = [&](int n) {
    PointSet ps;
    ps.points.resize(n, d);
    ps.labels.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) ps.points(i, j) = rng.uniform();
      ps.labels[i] = signal_amp * std::sin(kTwoPi * ps.points.row(i).dot(dir)) +
                     noise_sd * rng.normal();
    }
    return ps;
  };
  PointSet train = make(n_train);
  PointSet test = make(n_test);
  return {std::move(train), std::move(test)};
}

}  // namespace rfferr
