#include "rulfis/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rulfis/errors.hpp"

namespace rulfis::mixture {

namespace {

Eigen::VectorXd uniform(Eigen::Index j) { return Eigen::VectorXd::Constant(j, 1.0 / static_cast<double>(j)); }

void check_rule_shapes(const Eigen::VectorXd& input, const Eigen::MatrixXd& centers, const Eigen::VectorXd& sigmas,
                       const Eigen::VectorXd& rule_weights) {
  if (centers.rows() < 1) throw InputError("rule base is empty");
  if (input.size() != centers.cols() || sigmas.size() != centers.cols()) {
    throw InputError("input length " + std::to_string(input.size()) + " does not match rule dimension " +
                     std::to_string(centers.cols()));
  }
  if (rule_weights.size() != 0 && rule_weights.size() != centers.rows()) {
    throw InputError("rule weight count does not match rule count");
  }
}

}  // namespace

Eigen::VectorXd rule_firing(const Eigen::VectorXd& input, const Eigen::MatrixXd& centers, const Eigen::VectorXd& sigmas,
                            const Eigen::VectorXd& rule_weights) {
  check_rule_shapes(input, centers, sigmas, rule_weights);
  Eigen::VectorXd w(centers.rows());
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    double exponent = 0.0;
    for (Eigen::Index i = 0; i < centers.cols(); ++i) {
      const double z = (input(i) - centers(j, i)) / sigmas(i);
      exponent += 0.5 * z * z;
    }
    w(j) = (rule_weights.size() == 0 ? 1.0 : rule_weights(j)) * std::exp(-exponent);
  }
  return w;
}

Eigen::VectorXd normalize_firing(const Eigen::VectorXd& firing) {
  if (firing.size() == 0) throw InputError("no firing degrees to normalize");
  const double total = firing.sum();
  if (!(total >= kUnderflowGuard)) return uniform(firing.size());
  return firing / total;
}

Eigen::MatrixXd normalized_firing_matrix(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& centers,
                                         const Eigen::VectorXd& sigmas, const Eigen::VectorXd& rule_weights) {
  Eigen::MatrixXd out(inputs.rows(), centers.rows());
  for (Eigen::Index k = 0; k < inputs.rows(); ++k) {
    out.row(k) = normalize_firing(rule_firing(inputs.row(k).transpose(), centers, sigmas, rule_weights)).transpose();
  }
  return out;
}

double time_variance_floor(const Eigen::VectorXd& tau) {
  std::vector<double> t(tau.data(), tau.data() + tau.size());
  std::sort(t.begin(), t.end());
  double gap = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double d = t[k] - t[k - 1];
    if (d > 0.0 && (gap == 0.0 || d < gap)) gap = d;
  }
  if (gap == 0.0) gap = 1.0;
  return (0.01 * gap) * (0.01 * gap);
}

TimeClusterParams estimate_time_clusters(const Eigen::VectorXd& tau, const Eigen::MatrixXd& memberships) {
  const Eigen::Index k = memberships.rows();
  if (k < 2) throw InputError("time clusters need at least 2 observations");
  if (tau.size() != k) throw InputError("time column length does not match membership rows");
  if (memberships.cols() < 1) throw InputError("membership matrix has no rules");

  const double floor = time_variance_floor(tau);
  TimeClusterParams params(static_cast<std::size_t>(memberships.cols()));
  for (Eigen::Index j = 0; j < memberships.cols(); ++j) {
    const Eigen::VectorXd w = memberships.col(j);
    const double mass = w.sum();
    TimeCluster& tc = params[static_cast<std::size_t>(j)];
    tc.prior = mass / static_cast<double>(k);
    if (mass > 0.0) {
      tc.centroid = w.dot(tau) / mass;
      tc.variance = w.dot((tau.array() - tc.centroid).square().matrix()) / mass;
    } else {
      // A rule that never fires carries zero prior, so its time cluster is inert.
      tc.centroid = tau.mean();
      tc.variance = (tau.array() - tc.centroid).square().mean();
    }
    if (tc.variance < floor) tc.variance = floor;
  }
  return params;
}

double time_membership(double tau, const TimeCluster& cluster) {
  if (!(cluster.variance > 0.0)) throw InputError("time variance must be positive");
  const double d = tau - cluster.centroid;
  return std::exp(-d * d / (2.0 * cluster.variance));
}

Eigen::VectorXd weighted_firing(const Eigen::VectorXd& input, double tau, const Eigen::MatrixXd& centers,
                                const Eigen::VectorXd& sigmas, const TimeClusterParams& params,
                                const Eigen::VectorXd& rule_weights) {
  if (static_cast<Eigen::Index>(params.size()) != centers.rows()) {
    throw InputError("time cluster count does not match rule count");
  }
  Eigen::VectorXd w = rule_firing(input, centers, sigmas, rule_weights);
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const TimeCluster& tc = params[static_cast<std::size_t>(j)];
    w(j) *= tc.prior * time_membership(tau, tc);
  }
  return normalize_firing(w);
}

Eigen::MatrixXd weighted_firing_matrix(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& tau,
                                       const Eigen::MatrixXd& centers, const Eigen::VectorXd& sigmas,
                                       const TimeClusterParams& params, const Eigen::VectorXd& rule_weights) {
  if (tau.size() != inputs.rows()) throw InputError("time column length does not match input rows");
  Eigen::MatrixXd out(inputs.rows(), centers.rows());
  for (Eigen::Index k = 0; k < inputs.rows(); ++k) {
    out.row(k) = weighted_firing(inputs.row(k).transpose(), tau(k), centers, sigmas, params, rule_weights).transpose();
  }
  return out;
}

DensityEvaluation mixture_density(const Eigen::VectorXd& input, const std::vector<Component>& components) {
  if (components.empty()) throw InputError("mixture has no components");
  const Eigen::Index dim = input.size();
  Eigen::VectorXd log_terms(static_cast<Eigen::Index>(components.size()));
  for (std::size_t j = 0; j < components.size(); ++j) {
    const Component& c = components[j];
    if (c.mean.size() != dim || c.variances.size() != dim) throw InputError("component dimension mismatch");
    if ((c.variances.array() <= 0.0).any() || !c.variances.allFinite()) {
      throw InputError("component " + std::to_string(j) + " covariance is not positive definite");
    }
    if (c.proportion < 0.0) throw InputError("negative mixture proportion");
    const double quad = ((input - c.mean).array().square() / c.variances.array()).sum();
    const double log_norm = 0.5 * static_cast<double>(dim) * std::log(2.0 * std::numbers::pi) +
                            0.5 * c.variances.array().log().sum();
    log_terms(static_cast<Eigen::Index>(j)) =
        (c.proportion > 0.0 ? std::log(c.proportion) : -std::numeric_limits<double>::infinity()) - log_norm -
        0.5 * quad;
  }
  const double peak = log_terms.maxCoeff();
  DensityEvaluation out;
  if (!std::isfinite(peak)) {
    out.density = 0.0;
    out.posterior = uniform(log_terms.size());
    return out;
  }
  const Eigen::VectorXd scaled = (log_terms.array() - peak).exp();
  const double sum = scaled.sum();
  out.density = std::exp(peak) * sum;
  out.posterior = scaled / sum;
  return out;
}

std::vector<Component> estimate_components(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& memberships) {
  if (inputs.rows() != memberships.rows()) throw InputError("membership rows do not match input rows");
  const auto k = static_cast<double>(inputs.rows());
  std::vector<Component> out(static_cast<std::size_t>(memberships.cols()));
  for (Eigen::Index j = 0; j < memberships.cols(); ++j) {
    const Eigen::VectorXd w = memberships.col(j);
    const double mass = w.sum();
    Component& c = out[static_cast<std::size_t>(j)];
    c.proportion = mass / k;
    if (mass > 0.0) {
      c.mean = (inputs.transpose() * w) / mass;
      c.variances = (inputs.rowwise() - c.mean.transpose()).array().square().matrix().transpose() * w / mass;
    } else {
      c.mean = inputs.colwise().mean().transpose();
      c.variances = (inputs.rowwise() - c.mean.transpose()).array().square().colwise().mean().transpose();
    }
  }
  return out;
}

}  // namespace rulfis::mixture
