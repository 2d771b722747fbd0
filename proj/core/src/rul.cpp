#include "rulfis/rul.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "rulfis/errors.hpp"

namespace rulfis::rul {

double pul_ratio(double tau, double lifetime) {
  if (!(lifetime > 0.0)) throw InputError("lifetime must be positive");
  if (!(tau >= 0.0) || tau > lifetime) {
    throw InputError("elapsed time " + std::to_string(tau) + " outside [0, " + std::to_string(lifetime) + "]");
  }
  return tau / lifetime;
}

std::optional<double> rul_from_ratio(double rho, double tau) {
  if (!(tau >= 0.0)) throw InputError("elapsed time must be non-negative");
  if (rho > 1.0) throw InputError("ratio above 1");
  if (!(rho >= kRatioFloor)) return std::nullopt;
  return (1.0 / rho - 1.0) * tau;
}

double rrmse(std::span<const double> truth, std::span<const double> estimate) {
  if (truth.size() != estimate.size()) throw InputError("rrmse inputs differ in length");
  double acc = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (truth[k] == 0.0) {
      ++dropped;
      continue;
    }
    const double rel = (truth[k] - estimate[k]) / truth[k];
    acc += rel * rel;
    ++used;
  }
  if (dropped > 0) warn("rrmse skipped " + std::to_string(dropped) + " observation(s) with zero true ratio");
  if (used == 0) throw InputError("rrmse has no observations with a non-zero true ratio");
  return std::sqrt(acc / static_cast<double>(used));
}

double arrmse(std::span<const double> per_bearing) {
  if (per_bearing.empty()) throw InputError("arrmse needs at least one bearing");
  return std::accumulate(per_bearing.begin(), per_bearing.end(), 0.0) / static_cast<double>(per_bearing.size());
}

}  // namespace rulfis::rul
