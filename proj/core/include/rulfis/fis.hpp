#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rulfis/clustering.hpp"
#include "rulfis/mixture.hpp"
#include "rulfis/types.hpp"

namespace rulfis::fis {

enum class Variant { kBaseline, kWeighted };

std::string_view variant_name(Variant variant);
Variant parse_variant(std::string_view name);

struct Rule {
  Eigen::VectorXd center;    // c_j, length I
  double weight = 1.0;       // r_j
  Eigen::VectorXd slope;     // a_j, length I
  double intercept = 0.0;    // b_j
  std::optional<mixture::TimeCluster> time;  // weighted models only
};

/// Takagi-Sugeno rule base with Gaussian antecedents and affine consequents.
/// Immutable once identified; concurrent inference is safe.
struct Model {
  std::vector<Rule> rules;
  Eigen::VectorXd sigmas;
  std::vector<std::string> feature_set;
  Variant variant = Variant::kBaseline;
  std::map<std::string, std::string> provenance;

  [[nodiscard]] Eigen::Index rule_count() const { return static_cast<Eigen::Index>(rules.size()); }
  [[nodiscard]] Eigen::Index input_count() const { return sigmas.size(); }
  [[nodiscard]] Eigen::MatrixXd centers() const;
  [[nodiscard]] Eigen::VectorXd rule_weights() const;
  [[nodiscard]] mixture::TimeClusterParams time_params() const;

  /// Throws InputError when dimensions disagree or spreads are not positive.
  void validate() const;
};

struct Inference {
  double raw = 0.0;      // aggregated consequent output
  double clamped = 0.0;  // raw limited to [0, 1]
};

/// Baseline models aggregate with the normalized firing degrees; weighted
/// models need `tau` and use the time- and prior-weighted degrees.
Inference infer(const Model& model, const Eigen::VectorXd& input, std::optional<double> tau = std::nullopt);

/// Phi (K x J(I+1)): row k, block j = [w_jk * v_k^T, w_jk], rule-major.
Eigen::MatrixXd build_design_matrix(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& weights);

struct LeastSquaresSolution {
  Eigen::VectorXd beta;
  Eigen::Index rank = 0;
  bool rank_deficient = false;
};

/// Minimum-norm argmin |target - design * beta|^2 via SVD, singular values
/// below s_max * 1e-10 treated as zero.
LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target);

/// FSC-LSE: consequents fitted with the plain normalized firing degrees.
Model identify_baseline(const TrainingTable& table, const clustering::ClusterSet& clusters);

/// MLWLSE: priors and time clusters from the normalized firing degrees, then
/// consequents fitted with the weighted degrees.
Model identify_weighted(const TrainingTable& table, const clustering::ClusterSet& clusters);

/// The weighted fit for externally supplied time-cluster parameters.
Model identify_weighted_with(const TrainingTable& table, const clustering::ClusterSet& clusters,
                             const mixture::TimeClusterParams& params);

/// Firing matrix (K x J) the model aggregates with for each table row.
Eigen::MatrixXd aggregation_weights(const Model& model, const TrainingTable& table);

/// beta stacked rule-major as [a_1, b_1, ..., a_J, b_J].
Eigen::VectorXd consequent_vector(const Model& model);

}  // namespace rulfis::fis
