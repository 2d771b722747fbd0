#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rulfis/types.hpp"

namespace rulfis {

/// Contents of a `k,tau,<features...>,rho` file.
struct FeatureTable {
  std::string bearing_id;
  std::vector<std::string> feature_names;
  std::vector<std::size_t> index;
  std::vector<FeatureVector> rows;

  [[nodiscard]] bool labeled() const;
  /// Requires every row to carry rho.
  [[nodiscard]] TrainingTable to_training_table() const;
  static FeatureTable from_training_table(const TrainingTable& table, std::vector<std::string> names,
                                          std::string bearing_id = {});
};

void write_feature_csv(std::ostream& out, const FeatureTable& table);
void save_feature_csv(const FeatureTable& table, const std::filesystem::path& path);

/// Throws LoadError on malformed content. bearing_id is the file stem.
FeatureTable read_feature_csv(const std::filesystem::path& path);
FeatureTable read_feature_csv(std::istream& in, std::string bearing_id);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace rulfis
