#include "rfferr/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rfferr/parallel.hpp"

namespace rfferr {

namespace {
constexpr std::uint64_t kIterationTag = 0x626f6f74ull;  // per-iteration stream
}

double empirical_quantile(const std::vector<double>& values, double level) {
  if (values.empty()) {
    throw std::invalid_argument("empirical_quantile: empty value list");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("empirical_quantile: level must be in (0,1)");
  }
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  // smallest k with k/n >= level, evaluated in the same arithmetic as the
  // definition so ties round the right way
  std::size_t k = static_cast<std::size_t>(
      std::clamp(std::ceil(level * static_cast<double>(n)), 1.0,
                 static_cast<double>(n)));
  while (k > 1 && static_cast<double>(k - 1) / static_cast<double>(n) >= level) --k;
  while (k < n && static_cast<double>(k) / static_cast<double>(n) < level) ++k;
  return sorted[k - 1];
}

std::vector<int> resample_indices(int s, RngStream& rng) {
  if (s < 1) throw std::invalid_argument("resample_indices: s must be >= 1");
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (auto& v : idx) {
    v = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(s)));
  }
  return idx;
}

BootstrapResult run_bootstrap(const ErrorFunctional& functional, int s,
                              const BootstrapConfig& config, int workers) {
  if (s < 1) throw std::invalid_argument("run_bootstrap: s must be >= 1");
  if (config.iterations < 1) {
    throw std::invalid_argument("run_bootstrap: N must be >= 1");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("run_bootstrap: alpha must be in (0,1)");
  }

  BootstrapResult result;
  result.feature_count = s;
  result.alpha = config.alpha;
  result.iterations = config.iterations;
  result.pseudo_errors.resize(static_cast<std::size_t>(config.iterations));

  std::vector<std::string> failures(
      static_cast<std::size_t>(config.iterations));
  parallel_for(config.iterations, workers, [&](int j) {
    RngStream rng = RngStream::derive(
        config.seed, {kIterationTag, static_cast<std::uint64_t>(j)});
    try {
      const std::vector<int> idx = resample_indices(s, rng);
      double v = functional(idx, rng);
      if (config.mode == ErrorMode::Absolute) v = std::abs(v);
      result.pseudo_errors[static_cast<std::size_t>(j)] = v;
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(j)] = e.what();
      throw;  // recorded; rethrown below with the iteration attached
    }
  });
  for (std::size_t j = 0; j < failures.size(); ++j) {
    if (!failures[j].empty()) {
      throw std::runtime_error("bootstrap iteration " + std::to_string(j) +
                               " failed: " + failures[j]);
    }
  }

  result.estimate =
      empirical_quantile(result.pseudo_errors, 1.0 - config.alpha);
  return result;
}

double extrapolate(double estimate_at_s0, long long s0, long long s1) {
  if (s0 < 1 || s1 < 1) {
    throw std::invalid_argument("extrapolate: feature counts must be >= 1");
  }
  return std::sqrt(static_cast<double>(s0) / static_cast<double>(s1)) *
         estimate_at_s0;
}

long long select_feature_count(double estimate_at_s0, int s0, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("select_feature_count: tol must be positive");
  }
  if (estimate_at_s0 < 0.0) {
    throw std::invalid_argument("select_feature_count: estimate must be >= 0");
  }
  if (s0 < 1) throw std::invalid_argument("select_feature_count: s0 must be >= 1");
  if (estimate_at_s0 <= tol) return s0;
  const double ratio = estimate_at_s0 / tol;
  // slack of a few ulps so exact-ratio inputs do not round up
  const double target = static_cast<double>(s0) * ratio * ratio * (1.0 - 1e-12);
  return std::max<long long>(static_cast<long long>(std::ceil(target)), s0);
}

}  // namespace rfferr
