#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rfferr/kernels.hpp"

namespace rfferr {

enum class Task { MatrixLinf, MatrixOp, Krr, Mmd };

std::string to_string(Task task);
Task task_from_string(const std::string& name);

/// One experiment: for each s in the grid, `trials` independent feature maps,
/// the realized true error of each (oracle column) and the bootstrap estimate
/// of each, plus extrapolation from s0. Fully determined by `seed`; the
/// worker count never changes the output.
///
/// Dataset descriptors ("name" or "name:key=value,key=value"):
///   swiss-roll:n=300
///   lorenz:n=300,dt=0.01,burn=1000
///   gauss-pair:n=2000,d=10,var1=0.1,var2=0.1933        (mmd)
///   synth-reg:n=2000,t=50,d=10,amp=0.3,noise=1.0       (krr)
///   csv:path=FILE,header=0|1,minmax=0|1,rows=R,cols=C
///        krr needs test=T (rows held out from the end); mmd needs path2=FILE
struct ExperimentSpec {
  Task task = Task::MatrixLinf;
  std::string dataset = "swiss-roll:n=300";
  KernelFamily kernel_family = KernelFamily::Gaussian;
  double kernel_scale = 1.0;
  std::vector<int> s_grid;
  int s0 = 0;  // 0 -> smallest grid value
  double alpha = 0.1;
  int bootstrap_iterations = 50;
  int trials = 300;
  std::uint64_t seed = 0;
  std::string out_path;  // empty -> stdout
  int workers = 1;
  double lambda = 1.0;   // krr
  bool sqrt_y = false;   // krr: y <- sqrt(y) before fitting
  bool rescale = false;  // divide value columns by the oracle at the smallest s
};

/// Writes the CSV table
/// s,oracle_quantile,mean_bootstrap_estimate,sd_bootstrap_estimate,
/// mean_extrapolated_estimate,sd_extrapolated_estimate.
void run_experiment(const ExperimentSpec& spec);

struct SelectReport {
  int s0 = 0;
  double estimate = 0.0;
  double tolerance = 0.0;
  long long recommended_s1 = 0;
  double predicted_error = 0.0;
};

/// Single-realization feature-count selection: bootstrap estimate at s0,
/// recommended s1 for the tolerance, and the predicted error there.
SelectReport run_select(const ExperimentSpec& spec, double tol,
                        std::ostream& out);

}  // namespace rfferr
