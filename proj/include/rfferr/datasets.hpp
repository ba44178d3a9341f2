#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "rfferr/rng.hpp"

namespace rfferr {

struct PointSet {
  Eigen::MatrixXd points;  // n x d
  Eigen::VectorXd labels;  // n, or empty

  bool has_labels() const { return labels.size() == points.rows() && points.rows() > 0; }
};

/// Point on the Swiss roll surface at spiral parameter t and height h:
/// (t cos t, h, t sin t).
Eigen::Vector3d swiss_roll_point(double t, double h);

/// n points with t ~ Uniform[3pi/2, 9pi/2] and h ~ Uniform[0, 21].
PointSet gen_swiss_roll(int n, RngStream& rng);

/// n consecutive RK4 states of the Lorenz system (sigma=10, rho=28, beta=8/3)
/// after discarding burn_in steps from x0. Throws if the trajectory blows up.
PointSet gen_lorenz(int n, double dt = 0.01,
                    const Eigen::Vector3d& x0 = Eigen::Vector3d(1.0, 1.0, 1.0),
                    int burn_in = 1000);

/// Single RK4 step of the Lorenz system.
Eigen::Vector3d lorenz_rk4_step(const Eigen::Vector3d& state, double dt);

/// Two samples of size n from N(0, var1 I_d) and N(0, var2 I_d).
std::pair<PointSet, PointSet> gen_gaussian_pair(int n, int d, double var1,
                                                double var2, RngStream& rng);

/// Per-column (x - min)/(max - min); constant columns map to 0.
PointSet minmax_scale(const PointSet& input);

/// Numeric CSV loader. Optional header row; optionally treats the final
/// column as the label vector. Malformed rows fail with the line number.
PointSet load_csv(const std::string& path, bool has_header,
                  bool last_column_label = false);

/// Uniform without-replacement row and column subsets (order as drawn).
PointSet subsample(const PointSet& input, int rows, int cols, RngStream& rng);

/// Synthetic regression data for the krr task: x ~ Uniform[0,1)^d and
/// y = signal_amp * sin(2 pi <a, x>) + noise_sd * N(0,1) for a fixed random
/// unit direction a. Returns labeled train/test point sets.
std::pair<PointSet, PointSet> gen_synth_regression(int n_train, int n_test,
                                                   int d, double signal_amp,
                                                   double noise_sd,
                                                   RngStream& rng);

}  // namespace rfferr
