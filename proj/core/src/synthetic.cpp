#include <cmath>
#include <random>

#include "rulfis/datasets.hpp"
#include "rulfis/errors.hpp"
#include "rulfis/rul.hpp"

namespace rulfis::datasets {

namespace {

// Clean trajectory of feature `i` at life ratio rho: continuous, piecewise
// linear with one segment per regime and steepening slopes.
double clean_feature(int i, int regimes, double rho) {
  const double base_slope = 1.0 + 0.5 * i;
  const double growth = 1.8 + 0.3 * i;
  double value = 0.5 * (i + 1);
  double slope = base_slope;
  for (int j = 0; j < regimes; ++j) {
    const double lo = static_cast<double>(j) / regimes;
    const double hi = static_cast<double>(j + 1) / regimes;
    if (rho <= hi || j == regimes - 1) return value + slope * (rho - lo);
    value += slope * (hi - lo);
    slope *= growth;
  }
  return value;
}

}  // namespace

TrainingTable synth_bearing(std::uint64_t seed, int regimes, double lifetime, double noise, const SynthOptions& options) {
  if (regimes < 1) throw InputError("synthetic bearing needs at least one regime");
  if (!(lifetime > 0.0)) throw InputError("synthetic lifetime must be positive");
  if (options.feature_count < 1) throw InputError("synthetic bearing needs at least one feature");
  if (!(options.interval > 0.0) || options.interval > lifetime) throw InputError("invalid observation interval");
  if (noise < 0.0) throw InputError("noise level must be non-negative");

  const auto count = static_cast<Eigen::Index>(std::floor(lifetime / options.interval + 1e-9));
  const double final_time = options.interval * static_cast<double>(count);
  TrainingTable table;
  table.inputs.resize(count, options.feature_count);
  table.rho.resize(count);
  table.tau.resize(count);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < options.feature_count; ++i) {
    const double range = clean_feature(i, regimes, 1.0) - clean_feature(i, regimes, 0.0);
    for (Eigen::Index k = 0; k < count; ++k) {
      const double tau = options.interval * static_cast<double>(k + 1);
      const double rho = rul::pul_ratio(tau, final_time);
      table.tau(k) = tau;
      table.rho(k) = rho;
      table.inputs(k, i) = clean_feature(i, regimes, rho) + (noise > 0.0 ? noise * range * gauss(rng) : 0.0);
    }
  }
  return table;
}

}  // namespace rulfis::datasets
