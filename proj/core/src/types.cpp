#include "rulfis/types.hpp"

#include <cmath>
#include <string>

#include "rulfis/errors.hpp"

namespace rulfis {

void TrainingTable::validate() const {
  if (inputs.rows() < 1) throw InputError("training table is empty");
  if (inputs.cols() < 1) throw InputError("training table has no input features");
  if (rho.size() != inputs.rows()) throw InputError("training table ratio column length differs from row count");
  if (tau.size() != 0 && tau.size() != inputs.rows()) {
    throw InputError("training table time column length differs from row count");
  }
  if (!inputs.allFinite() || !rho.allFinite() || !tau.allFinite()) {
    throw InputError("training table contains non-finite entries");
  }
  for (Eigen::Index k = 0; k < rho.size(); ++k) {
    if (rho(k) < 0.0 || rho(k) > 1.0) {
      throw InputError("ratio outside [0, 1] at row " + std::to_string(k));
    }
  }
}

TrainingTable TrainingTable::from_features(std::span<const FeatureVector> rows) {
  TrainingTable table;
  if (rows.empty()) return table;
  const auto width = static_cast<Eigen::Index>(rows.front().values.size());
  const auto count = static_cast<Eigen::Index>(rows.size());
  table.inputs.resize(count, width);
  table.rho.resize(count);
  table.tau.resize(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const FeatureVector& row = rows[static_cast<std::size_t>(k)];
    if (static_cast<Eigen::Index>(row.values.size()) != width) {
      throw InputError("feature vector " + std::to_string(k) + " has a different length");
    }
    if (!row.rho) throw InputError("feature vector " + std::to_string(k) + " carries no ratio label");
    for (Eigen::Index i = 0; i < width; ++i) table.inputs(k, i) = row.values[static_cast<std::size_t>(i)];
    table.rho(k) = *row.rho;
    table.tau(k) = row.tau;
  }
  return table;
}

TrainingTable TrainingTable::pool(std::span<const TrainingTable> tables) {
  TrainingTable pooled;
  if (tables.empty()) return pooled;
  const Eigen::Index width = tables.front().features();
  Eigen::Index total = 0;
  bool all_tau = true;
  for (const auto& t : tables) {
    if (t.features() != width) throw InputError("cannot pool tables with different feature counts");
    total += t.rows();
    all_tau = all_tau && t.has_tau();
  }
  pooled.inputs.resize(total, width);
  pooled.rho.resize(total);
  if (all_tau) pooled.tau.resize(total);
  Eigen::Index offset = 0;
  for (const auto& t : tables) {
    pooled.inputs.middleRows(offset, t.rows()) = t.inputs;
    pooled.rho.segment(offset, t.rows()) = t.rho;
    if (all_tau) pooled.tau.segment(offset, t.rows()) = t.tau;
    offset += t.rows();
  }
  return pooled;
}

}  // namespace rulfis
