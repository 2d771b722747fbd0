#pragma once

#include <vector>

#include <Eigen/Dense>

namespace rulfis::mixture {

/// Denominators below this return the uniform distribution over rules.
inline constexpr double kUnderflowGuard = 1e-300;

/// Time-axis projection of one rule's regime.
struct TimeCluster {
  double prior = 0.0;     // estimated P(theta_Rj)
  double centroid = 0.0;  // seconds
  double variance = 0.0;  // seconds^2
};

using TimeClusterParams = std::vector<TimeCluster>;

/// w_j = r_j * prod_i exp(-(v_i - c_ji)^2 / (2 sigma_i^2)).
/// `centers` is J x I; `rule_weights` is empty (all ones) or length J.
Eigen::VectorXd rule_firing(const Eigen::VectorXd& input, const Eigen::MatrixXd& centers,
                            const Eigen::VectorXd& sigmas, const Eigen::VectorXd& rule_weights = {});

/// w / sum(w), or 1/J everywhere when the sum underflows.
Eigen::VectorXd normalize_firing(const Eigen::VectorXd& firing);

/// Normalized firing for every row of `inputs` (K x I); result is K x J.
Eigen::MatrixXd normalized_firing_matrix(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& centers,
                                         const Eigen::VectorXd& sigmas, const Eigen::VectorXd& rule_weights = {});

/// Priors, time centroids and time variances from membership-weighted means.
/// `memberships` is K x J with rows summing to 1.
TimeClusterParams estimate_time_clusters(const Eigen::VectorXd& tau, const Eigen::MatrixXd& memberships);

/// Smallest admissible time variance: (0.01 * observation interval)^2, where
/// the interval is the smallest positive gap between sorted time stamps.
double time_variance_floor(const Eigen::VectorXd& tau);

double time_membership(double tau, const TimeCluster& cluster);

/// P_j * mu_jt(tau) * w_j, normalized over rules.
Eigen::VectorXd weighted_firing(const Eigen::VectorXd& input, double tau, const Eigen::MatrixXd& centers,
                                const Eigen::VectorXd& sigmas, const TimeClusterParams& params,
                                const Eigen::VectorXd& rule_weights = {});

Eigen::MatrixXd weighted_firing_matrix(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& tau,
                                       const Eigen::MatrixXd& centers, const Eigen::VectorXd& sigmas,
                                       const TimeClusterParams& params, const Eigen::VectorXd& rule_weights = {});

/// One multivariate normal component with diagonal covariance.
struct Component {
  double proportion = 0.0;
  Eigen::VectorXd mean;
  Eigen::VectorXd variances;
};

struct DensityEvaluation {
  double density = 0.0;
  Eigen::VectorXd posterior;  // P(theta_Rj | V)
};

/// Mixture density f(V) and the Bayes posterior of each component.
/// Throws InputError for non-positive variances or mismatched dimensions.
DensityEvaluation mixture_density(const Eigen::VectorXd& input, const std::vector<Component>& components);

/// Closed-form maximum-likelihood proportions, means and per-feature variances
/// with `memberships` (K x J) standing in for the posterior.
std::vector<Component> estimate_components(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& memberships);

}  // namespace rulfis::mixture
