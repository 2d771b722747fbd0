#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rulfis/types.hpp"

namespace rulfis::clustering {

struct ClusterConfig {
  double influence_radius = 0.5;    // r_a, in normalized units
  double squash_radius = 0.625;     // r_b = 1.25 r_a
  double accept_ratio = 0.5;
  double reject_ratio = 0.15;

  /// r_b tied to 1.25 r_a.
  static ClusterConfig with_radius(double r_a) { return {r_a, 1.25 * r_a, 0.5, 0.15}; }

  /// Throws ConfigError unless 0 < r_a < r_b and 0 < reject < accept <= 1.
  void validate() const;
};

struct ClusterSet {
  Eigen::MatrixXd centers;   // J x (I + 1), original units; last column is c*_j
  Eigen::VectorXd sigmas;    // I, input membership spreads
  std::vector<Eigen::Index> center_rows;  // table row chosen for each center

  [[nodiscard]] Eigen::Index rule_count() const { return centers.rows(); }
  [[nodiscard]] Eigen::MatrixXd input_centers() const { return centers.leftCols(centers.cols() - 1); }
};

/// Rows of [inputs | rho] rescaled column-wise to [0, 1]. Constant columns map to 0.
Eigen::MatrixXd normalized_joint_matrix(const TrainingTable& table);

/// Chiu potentials sum_m exp(-4 |x_k - x_m|^2 / r_a^2) over normalized rows.
Eigen::VectorXd initial_potentials(const Eigen::MatrixXd& normalized, double influence_radius);

/// Subtractive clustering on the joint input/output matrix.
ClusterSet subtractive_cluster(const TrainingTable& table, const ClusterConfig& config = {});

/// sigma_i = r_a (max V_i - min V_i) / (2 sqrt 2), per raw input column.
/// Constant columns are clamped to 1e-9 * max(1, |value|) with a warning.
Eigen::VectorXd input_sigmas(const TrainingTable& table, double influence_radius);

}  // namespace rulfis::clustering
