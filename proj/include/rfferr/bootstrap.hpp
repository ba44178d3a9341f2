#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rfferr/rng.hpp"

namespace rfferr {

/// How functional pseudo-errors enter the quantile: |psi*(idx) - psi| or the
/// signed difference. Matrix-norm functionals are nonnegative either way.
enum class ErrorMode { Absolute, Signed };

struct BootstrapConfig {
  int iterations = 50;  // N
  double alpha = 0.1;
  std::uint64_t seed = 0;
  ErrorMode mode = ErrorMode::Absolute;
};

/// Maps a with-replacement column resample (0-based indices of length s) to a
/// pseudo-error value. Implementations hold read-only references to the
/// feature data they were built from and must stay valid while in use; they
/// are safe for concurrent evaluation. Evaluating the identity resample
/// (0, 1, ..., s-1) yields exactly 0.
class ErrorFunctional {
 public:
  virtual ~ErrorFunctional() = default;
  virtual double operator()(const std::vector<int>& idx, RngStream& rng) const = 0;
};

/// Smallest element a of `values` with #{v <= a}/N >= level.
double empirical_quantile(const std::vector<double>& values, double level);

/// Length-s vector of i.i.d. uniform indices in {0, ..., s-1}.
std::vector<int> resample_indices(int s, RngStream& rng);

struct BootstrapResult {
  std::vector<double> pseudo_errors;  // one per iteration, in iteration order
  double estimate = 0.0;              // empirical (1 - alpha) quantile
  int feature_count = 0;
  double alpha = 0.0;
  int iterations = 0;

  double quantile(double level) const {
    return empirical_quantile(pseudo_errors, level);
  }
};

/// Runs the column-resampling bootstrap: N independent resamples of the s
/// features, one pseudo-error each, and the empirical (1 - alpha) quantile.
/// Per-iteration random streams are derived from (config.seed, iteration), so
/// the result is identical for any worker count. A functional failure aborts
/// the run with the iteration index attached.
BootstrapResult run_bootstrap(const ErrorFunctional& functional, int s,
                              const BootstrapConfig& config, int workers = 1);

/// Predicted quantile at s1 features from an estimate at s0: sqrt(s0/s1)
/// scaling.
double extrapolate(double estimate_at_s0, long long s0, long long s1);

/// Smallest feature count predicted to reach `tol`, never below s0:
/// ceil(s0 * (estimate/tol)^2).
long long select_feature_count(double estimate_at_s0, int s0, double tol);

}  // namespace rfferr
