#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rulfis {

/// One fixed-length acquisition of acceleration samples (g).
struct SignalWindow {
  std::vector<double> samples;
  double sample_rate = 0.0;  // Hz
  std::size_t index = 0;     // 1-based observation rank k
  double timestamp = 0.0;    // seconds since the start of the run
};

/// Condition indicators for one observation plus its time coordinate and,
/// for labeled run-to-failure data, the past-useful-life ratio.
struct FeatureVector {
  std::vector<double> values;
  double tau = 0.0;
  std::optional<double> rho;
};

/// A bearing's sequence of acquisitions ordered by timestamp.
struct Recording {
  std::string bearing_id;
  std::vector<SignalWindow> windows;
  double sample_interval = 0.0;
  std::optional<double> lifetime;  // tau_R, training recordings only
};

/// Pooled training observations: K rows of inputs, the ratio column and,
/// when known, each row's time coordinate.
///
/// `tau` is empty when time coordinates are absent; identification variants
/// that need them reject such tables.
struct TrainingTable {
  Eigen::MatrixXd inputs;  // K x I
  Eigen::VectorXd rho;     // K
  Eigen::VectorXd tau;     // K or 0

  [[nodiscard]] Eigen::Index rows() const { return inputs.rows(); }
  [[nodiscard]] Eigen::Index features() const { return inputs.cols(); }
  [[nodiscard]] bool has_tau() const { return tau.size() == inputs.rows() && tau.size() > 0; }

  /// Throws InputError when the table is empty, ragged, non-finite, or has
  /// ratios outside [0, 1].
  void validate() const;

  /// Builds a table from labeled vectors. Every vector must carry rho.
  static TrainingTable from_features(std::span<const FeatureVector> rows);

  /// Concatenates tables that share a feature count.
  static TrainingTable pool(std::span<const TrainingTable> tables);
};

}  // namespace rulfis
