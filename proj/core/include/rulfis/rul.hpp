#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rulfis::rul {

inline constexpr double kRatioFloor = 1e-3;

/// rho = tau / tau_R. Throws InputError unless 0 <= tau <= tau_R and tau_R > 0.
double pul_ratio(double tau, double lifetime);

/// (1/rho - 1) tau. Empty for rho below kRatioFloor (indeterminate early-life
/// estimate). Throws InputError for rho > 1 or tau < 0.
std::optional<double> rul_from_ratio(double rho, double tau);

/// Least-squares polynomial smoothing over a centered frame. Points within
/// half a frame of either end use the edge frame's fit evaluated off-center.
/// Series shorter than the frame pass through unchanged with a warning.
std::vector<double> savitzky_golay(std::span<const double> series, int order = 2, int frame = 61);

/// Weights that produce the smoothed value at `position` (0..frame-1) from the
/// frame's samples. Computed in exact rational arithmetic, then rounded.
std::vector<double> savitzky_golay_coefficients(int order, int frame, int position);

/// sqrt(mean(((rho - rho_hat) / rho)^2)), skipping rho == 0 with a warning.
double rrmse(std::span<const double> truth, std::span<const double> estimate);

double arrmse(std::span<const double> per_bearing);

}  // namespace rulfis::rul
