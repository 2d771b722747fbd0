#include "rulfis/fis.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

#include "rulfis/errors.hpp"

namespace rulfis::fis {

std::string_view variant_name(Variant variant) {
  return variant == Variant::kBaseline ? "baseline" : "weighted";
}

Variant parse_variant(std::string_view name) {
  if (name == "baseline") return Variant::kBaseline;
  if (name == "weighted") return Variant::kWeighted;
  throw ConfigError("unknown variant '" + std::string(name) + "' (expected baseline or weighted)");
}

Eigen::MatrixXd Model::centers() const {
  Eigen::MatrixXd c(rule_count(), input_count());
  for (Eigen::Index j = 0; j < rule_count(); ++j) c.row(j) = rules[static_cast<std::size_t>(j)].center.transpose();
  return c;
}

Eigen::VectorXd Model::rule_weights() const {
  Eigen::VectorXd r(rule_count());
  for (Eigen::Index j = 0; j < rule_count(); ++j) r(j) = rules[static_cast<std::size_t>(j)].weight;
  return r;
}

mixture::TimeClusterParams Model::time_params() const {
  mixture::TimeClusterParams params;
  params.reserve(rules.size());
  for (const Rule& rule : rules) {
    if (!rule.time) throw InputError("rule has no time cluster");
    params.push_back(*rule.time);
  }
  return params;
}

void Model::validate() const {
  if (rules.empty()) throw InputError("model has no rules");
  if (sigmas.size() < 1 || (sigmas.array() <= 0.0).any()) throw InputError("model spreads must be positive");
  if (!feature_set.empty() && static_cast<Eigen::Index>(feature_set.size()) != sigmas.size()) {
    throw InputError("feature set size does not match input count");
  }
  for (const Rule& rule : rules) {
    if (rule.center.size() != sigmas.size() || rule.slope.size() != sigmas.size()) {
      throw InputError("rule dimension does not match input count");
    }
    if (variant == Variant::kWeighted && !rule.time) throw InputError("weighted model rule lacks a time cluster");
  }
}

Inference infer(const Model& model, const Eigen::VectorXd& input, std::optional<double> tau) {
  if (input.size() != model.input_count()) {
    throw InputError("input has " + std::to_string(input.size()) + " features, model expects " +
                     std::to_string(model.input_count()));
  }
  Eigen::VectorXd w;
  if (model.variant == Variant::kWeighted) {
    if (!tau) throw InputError("weighted model inference needs the time coordinate");
    w = mixture::weighted_firing(input, *tau, model.centers(), model.sigmas, model.time_params(), model.rule_weights());
  } else {
    w = mixture::normalize_firing(mixture::rule_firing(input, model.centers(), model.sigmas, model.rule_weights()));
  }
  Inference out;
  for (Eigen::Index j = 0; j < model.rule_count(); ++j) {
    const Rule& rule = model.rules[static_cast<std::size_t>(j)];
    out.raw += w(j) * (rule.slope.dot(input) + rule.intercept);
  }
  out.clamped = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

Eigen::MatrixXd build_design_matrix(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& weights) {
  if (weights.rows() != inputs.rows()) throw InputError("weight rows do not match input rows");
  const Eigen::Index width = inputs.cols() + 1;
  Eigen::MatrixXd phi(inputs.rows(), weights.cols() * width);
  for (Eigen::Index k = 0; k < inputs.rows(); ++k) {
    for (Eigen::Index j = 0; j < weights.cols(); ++j) {
      phi.block(k, j * width, 1, inputs.cols()) = weights(k, j) * inputs.row(k);
      phi(k, j * width + inputs.cols()) = weights(k, j);
    }
  }
  return phi;
}

LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
  if (design.rows() != target.size()) throw InputError("design rows do not match target length");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  LeastSquaresSolution out;
  out.beta = Eigen::VectorXd::Zero(design.cols());
  if (s.size() == 0 || s(0) == 0.0) {
    out.rank_deficient = design.cols() > 0;
    return out;
  }
  const double cutoff = s(0) * 1e-10;
  const Eigen::VectorXd projected = svd.matrixU().transpose() * target;
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) {
      scaled(i) = projected(i) / s(i);
      ++out.rank;
    }
  }
  out.beta = svd.matrixV() * scaled;
  out.rank_deficient = out.rank < design.cols();
  return out;
}

namespace {

void require_matching(const TrainingTable& table, const clustering::ClusterSet& clusters) {
  table.validate();
  if (clusters.rule_count() < 1) throw InputError("cluster set is empty");
  if (clusters.centers.cols() != table.features() + 1 || clusters.sigmas.size() != table.features()) {
    throw InputError("cluster set dimension does not match the training table");
  }
}

Model fit_consequents(const TrainingTable& table, const clustering::ClusterSet& clusters, const Eigen::MatrixXd& weights,
                      Variant variant) {
  const Eigen::MatrixXd phi = build_design_matrix(table.inputs, weights);
  const LeastSquaresSolution sol = solve_least_squares(phi, table.rho);
  if (sol.rank_deficient) {
    warn("consequent regression is rank deficient (rank " + std::to_string(sol.rank) + " of " +
         std::to_string(phi.cols()) + "); using the minimum-norm solution");
  }
  Model model;
  model.variant = variant;
  model.sigmas = clusters.sigmas;
  const Eigen::Index width = table.features() + 1;
  model.rules.resize(static_cast<std::size_t>(clusters.rule_count()));
  for (Eigen::Index j = 0; j < clusters.rule_count(); ++j) {
    Rule& rule = model.rules[static_cast<std::size_t>(j)];
    rule.center = clusters.centers.row(j).head(table.features()).transpose();
    rule.slope = sol.beta.segment(j * width, table.features());
    rule.intercept = sol.beta(j * width + table.features());
  }
  return model;
}

}  // namespace

Model identify_baseline(const TrainingTable& table, const clustering::ClusterSet& clusters) {
  require_matching(table, clusters);
  const Eigen::MatrixXd wbar = mixture::normalized_firing_matrix(table.inputs, clusters.input_centers(), clusters.sigmas);
  return fit_consequents(table, clusters, wbar, Variant::kBaseline);
}

Model identify_weighted(const TrainingTable& table, const clustering::ClusterSet& clusters) {
  require_matching(table, clusters);
  if (!table.has_tau()) throw InputError("weighted identification needs time coordinates on every row");
  const Eigen::MatrixXd wbar = mixture::normalized_firing_matrix(table.inputs, clusters.input_centers(), clusters.sigmas);
  return identify_weighted_with(table, clusters, mixture::estimate_time_clusters(table.tau, wbar));
}

Model identify_weighted_with(const TrainingTable& table, const clustering::ClusterSet& clusters,
                             const mixture::TimeClusterParams& params) {
  require_matching(table, clusters);
  if (!table.has_tau()) throw InputError("weighted identification needs time coordinates on every row");
  const Eigen::MatrixXd wtilde =
      mixture::weighted_firing_matrix(table.inputs, table.tau, clusters.input_centers(), clusters.sigmas, params);
  Model model = fit_consequents(table, clusters, wtilde, Variant::kWeighted);
  for (std::size_t j = 0; j < model.rules.size(); ++j) model.rules[j].time = params[j];
  return model;
}

Eigen::MatrixXd aggregation_weights(const Model& model, const TrainingTable& table) {
  if (model.variant == Variant::kWeighted) {
    if (!table.has_tau()) throw InputError("weighted model needs time coordinates");
    return mixture::weighted_firing_matrix(table.inputs, table.tau, model.centers(), model.sigmas, model.time_params(),
                                           model.rule_weights());
  }
  return mixture::normalized_firing_matrix(table.inputs, model.centers(), model.sigmas, model.rule_weights());
}

Eigen::VectorXd consequent_vector(const Model& model) {
  const Eigen::Index width = model.input_count() + 1;
  Eigen::VectorXd beta(model.rule_count() * width);
  for (Eigen::Index j = 0; j < model.rule_count(); ++j) {
    const Rule& rule = model.rules[static_cast<std::size_t>(j)];
    beta.segment(j * width, model.input_count()) = rule.slope;
    beta(j * width + model.input_count()) = rule.intercept;
  }
  return beta;
}

}  // namespace rulfis::fis
