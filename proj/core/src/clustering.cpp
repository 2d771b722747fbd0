#include "rulfis/clustering.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rulfis/errors.hpp"

namespace rulfis::clustering {

void ClusterConfig::validate() const {
  if (!(influence_radius > 0.0)) throw ConfigError("influence radius r_a must be positive");
  if (!(squash_radius > influence_radius)) throw ConfigError("squash radius r_b must exceed r_a");
  if (!(reject_ratio > 0.0 && reject_ratio < accept_ratio && accept_ratio <= 1.0)) {
    throw ConfigError("thresholds must satisfy 0 < reject < accept <= 1");
  }
}

Eigen::MatrixXd normalized_joint_matrix(const TrainingTable& table) {
  Eigen::MatrixXd joint(table.rows(), table.features() + 1);
  joint.leftCols(table.features()) = table.inputs;
  joint.rightCols(1) = table.rho;
  for (Eigen::Index c = 0; c < joint.cols(); ++c) {
    const double lo = joint.col(c).minCoeff();
    const double range = joint.col(c).maxCoeff() - lo;
    if (range > 0.0) {
      joint.col(c) = (joint.col(c).array() - lo) / range;
    } else {
      joint.col(c).setZero();
    }
  }
  return joint;
}

Eigen::VectorXd initial_potentials(const Eigen::MatrixXd& normalized, double influence_radius) {
  const double alpha = 4.0 / (influence_radius * influence_radius);
  const Eigen::Index k = normalized.rows();
  Eigen::VectorXd potential(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    double p = 0.0;
    for (Eigen::Index b = 0; b < k; ++b) p += std::exp(-alpha * (normalized.row(a) - normalized.row(b)).squaredNorm());
    potential(a) = p;
  }
  return potential;
}

namespace {

// Index of the largest entry, lowest index on ties.
Eigen::Index argmax_first(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

}  // namespace

ClusterSet subtractive_cluster(const TrainingTable& table, const ClusterConfig& config) {
  table.validate();
  config.validate();

  const Eigen::MatrixXd x = normalized_joint_matrix(table);
  Eigen::VectorXd potential = initial_potentials(x, config.influence_radius);
  const double beta = 4.0 / (config.squash_radius * config.squash_radius);

  std::vector<Eigen::Index> chosen;
  const Eigen::Index first = argmax_first(potential);
  const double first_potential = potential(first);
  chosen.push_back(first);

  double center_potential = first_potential;
  Eigen::Index center = first;
  while (true) {
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
      potential(k) -= center_potential * std::exp(-beta * (x.row(k) - x.row(center)).squaredNorm());
    }

    bool accepted = false;
    while (true) {
      const Eigen::Index candidate = argmax_first(potential);
      const double p = potential(candidate);
      if (p > config.accept_ratio * first_potential) {
        center = candidate;
        accepted = true;
      } else if (p < config.reject_ratio * first_potential || p <= 0.0) {
        break;
      } else {
        double d_min = std::numeric_limits<double>::infinity();
        for (Eigen::Index c : chosen) d_min = std::min(d_min, (x.row(candidate) - x.row(c)).norm());
        if (d_min / config.influence_radius + p / first_potential >= 1.0) {
          center = candidate;
          accepted = true;
        } else {
          // Grey-zone point that sits too close to an existing center.
          potential(candidate) = 0.0;
          continue;
        }
      }
      break;
    }
    if (!accepted) break;
    center_potential = potential(center);
    chosen.push_back(center);
  }

  ClusterSet out;
  out.center_rows = chosen;
  out.centers.resize(static_cast<Eigen::Index>(chosen.size()), table.features() + 1);
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    const auto row = static_cast<Eigen::Index>(j);
    out.centers.row(row).head(table.features()) = table.inputs.row(chosen[j]);
    out.centers(row, table.features()) = table.rho(chosen[j]);
  }
  out.sigmas = input_sigmas(table, config.influence_radius);
  return out;
}

Eigen::VectorXd input_sigmas(const TrainingTable& table, double influence_radius) {
  if (table.rows() < 1) throw InputError("spreads need at least one row");
  Eigen::VectorXd sigmas(table.features());
  for (Eigen::Index i = 0; i < table.features(); ++i) {
    const double hi = table.inputs.col(i).maxCoeff();
    const double lo = table.inputs.col(i).minCoeff();
    const double sigma = influence_radius * (hi - lo) / (2.0 * std::sqrt(2.0));
    if (sigma > 0.0) {
      sigmas(i) = sigma;
    } else {
      sigmas(i) = 1e-9 * std::max(1.0, std::abs(hi));
      warn("input column " + std::to_string(i) + " is constant; spread clamped to " + std::to_string(sigmas(i)));
    }
  }
  return sigmas;
}

}  // namespace rulfis::clustering
