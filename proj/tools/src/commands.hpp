#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rulfis/feature_csv.hpp"
#include "rulfis/fis.hpp"
#include "run_config.hpp"

namespace rulfis::cli {

namespace fs = std::filesystem;

/// Clusters the pooled tables and fits the configured variant. Provenance
/// carries the effective config, its hash and the training bearings.
fis::Model train_model(const std::vector<FeatureTable>& tables, const RunConfig& config);

struct Prediction {
  std::vector<double> rho_hat;                // clamped to [0, 1]
  std::vector<std::optional<double>> rul;     // empty when indeterminate
  std::vector<double> rul_smoothed;
};

/// Rejects feature-set mismatches (config error) and rows out of time order.
Prediction predict_table(const fis::Model& model, const FeatureTable& table, const RunConfig& config);

struct BearingScore {
  std::string bearing;
  double rrmse = 0.0;
};

/// Per-bearing RRMSE; optionally appends evaluation curves to `curves`.
std::vector<BearingScore> score_model(const fis::Model& model, const std::vector<FeatureTable>& tables,
                                      const RunConfig& config, std::ostream* curves = nullptr);

void write_curves_header(std::ostream& out);

std::vector<FeatureTable> read_tables(const std::vector<fs::path>& paths);

void cmd_features(const RunConfig& config, const fs::path& input, const fs::path& out, std::ostream& log);
void cmd_train(const RunConfig& config, const std::vector<fs::path>& csvs, const fs::path& out, std::ostream& log);
void cmd_predict(const RunConfig& config, const fs::path& model, const fs::path& csv, const fs::path& out,
                 std::ostream& log);
void cmd_evaluate(const RunConfig& config, const fs::path& model, const std::vector<fs::path>& csvs,
                  const fs::path& out, const std::optional<fs::path>& curves, std::ostream& log);
void cmd_benchmark(const RunConfig& config, const std::vector<fs::path>& train, const std::vector<fs::path>& test,
                   const fs::path& out, std::ostream& log);

struct SynthArgs {
  int regimes = 3;
  double lifetime = 2000.0;
  double noise = 0.05;
  int feature_count = 2;
};

/// Writes one synthetic run-to-failure bearing as a labeled feature CSV.
void cmd_synth(const RunConfig& config, const SynthArgs& args, const fs::path& out, std::ostream& log);

}  // namespace rulfis::cli
