#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>

#include "rulfis/clustering.hpp"
#include "rulfis/datasets.hpp"
#include "rulfis/errors.hpp"
#include "rulfis/model_io.hpp"
#include "rulfis/rul.hpp"

namespace rulfis::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void require_same_features(const std::vector<FeatureTable>& tables) {
  for (const auto& t : tables) {
    if (t.feature_names != tables.front().feature_names) {
      throw ConfigError("feature sets differ: " + tables.front().bearing_id + " has [" +
                        join(tables.front().feature_names, ',') + "], " + t.bearing_id + " has [" +
                        join(t.feature_names, ',') + "]");
    }
  }
}

std::unique_ptr<features::WindowSource> open_source(const RunConfig& config, const fs::path& dir) {
  if (config.format == "phm") return std::make_unique<datasets::PhmSource>(dir);
  if (config.format == "ims") return std::make_unique<datasets::ImsSource>(dir, config.channel);
  return std::make_unique<datasets::TableDirSource>(dir, config.channel, config.sample_rate, config.interval);
}

double lifetime_of(const FeatureTable& table) {
  const FeatureVector& last = table.rows.back();
  if (!last.rho || !(*last.rho > 0.0)) throw InputError(table.bearing_id + ": last row has no positive rho");
  return last.tau / *last.rho;
}

}  // namespace

std::vector<FeatureTable> read_tables(const std::vector<fs::path>& paths) {
  if (paths.empty()) throw ConfigError("no feature files given");
  std::vector<FeatureTable> tables;
  for (const auto& p : paths) tables.push_back(read_feature_csv(p));
  return tables;
}

fis::Model train_model(const std::vector<FeatureTable>& tables, const RunConfig& config) {
  if (tables.empty()) throw ConfigError("no training bearings");
  require_same_features(tables);
  std::vector<TrainingTable> parts;
  std::vector<std::string> ids;
  for (const auto& t : tables) {
    if (!t.labeled()) throw ConfigError(t.bearing_id + ": training data needs rho on every row");
    parts.push_back(t.to_training_table());
    ids.push_back(t.bearing_id);
  }
  const TrainingTable pooled = TrainingTable::pool(parts);
  const clustering::ClusterSet clusters = clustering::subtractive_cluster(pooled, config.clusters);
  fis::Model model = config.variant == fis::Variant::kWeighted ? fis::identify_weighted(pooled, clusters)
                                                               : fis::identify_baseline(pooled, clusters);
  model.feature_set = tables.front().feature_names;
  model.provenance["config"] = config.to_json();
  model.provenance["config_hash"] = config.hash();
  model.provenance["training_bearings"] = join(ids, ',');
  model.provenance["training_rows"] = std::to_string(pooled.rows());
  model.provenance["software"] = "rulfis 0.1.0";
  return model;
}

Prediction predict_table(const fis::Model& model, const FeatureTable& table, const RunConfig& config) {
  if (table.feature_names != model.feature_set) {
    throw ConfigError(table.bearing_id + ": features [" + join(table.feature_names, ',') +
                      "] do not match the model's [" + join(model.feature_set, ',') + "]");
  }
  Prediction p;
  std::vector<double> rul_floored;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const FeatureVector& fv = table.rows[k];
    if (k > 0 && !(fv.tau > table.rows[k - 1].tau)) {
      throw InputError(table.bearing_id + ": row " + std::to_string(k + 1) + " is not after the previous one in time");
    }
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(fv.values.data(),
                                                                static_cast<Eigen::Index>(fv.values.size()));
    const double rho = fis::infer(model, v, fv.tau).clamped;
    p.rho_hat.push_back(rho);
    p.rul.push_back(rul::rul_from_ratio(rho, fv.tau));
    rul_floored.push_back(*rul::rul_from_ratio(std::max(rho, rul::kRatioFloor), fv.tau));
  }
  p.rul_smoothed = rul::savitzky_golay(rul_floored, config.sg_order, config.sg_frame);
  return p;
}

void write_curves_header(std::ostream& out) {
  out << "bearing,k,tau,rho_true,rho_hat,rul_true,rul_hat,rul_hat_smoothed\n";
}

std::vector<BearingScore> score_model(const fis::Model& model, const std::vector<FeatureTable>& tables,
                                      const RunConfig& config, std::ostream* curves) {
  std::vector<BearingScore> scores;
  for (const auto& t : tables) {
    if (!t.labeled()) throw ConfigError(t.bearing_id + ": evaluation data needs rho on every row");
    const Prediction p = predict_table(model, t, config);
    std::vector<double> truth;
    for (const auto& fv : t.rows) truth.push_back(*fv.rho);
    scores.push_back({t.bearing_id, rul::rrmse(truth, p.rho_hat)});
    if (!curves) continue;
    const double lifetime = lifetime_of(t);
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      const FeatureVector& fv = t.rows[k];
      *curves << t.bearing_id << ',' << (k < t.index.size() ? t.index[k] : k + 1) << ',' << format_double(fv.tau)
              << ',' << format_double(*fv.rho) << ',' << format_double(p.rho_hat[k]) << ','
              << format_double(lifetime - fv.tau) << ',';
      if (p.rul[k]) *curves << format_double(*p.rul[k]);
      *curves << ',' << format_double(p.rul_smoothed[k]) << '\n';
    }
  }
  return scores;
}

void cmd_features(const RunConfig& config, const fs::path& input, const fs::path& out, std::ostream& log) {
  const auto start = Clock::now();
  const auto set = config.feature_set();
  const auto source = open_source(config, input);
  FeatureTable table;
  table.bearing_id = input.filename().string();
  if (table.bearing_id.empty()) table.bearing_id = input.parent_path().filename().string();
  table.feature_names = features::feature_names(set);
  table.rows = features::extract_features(*source, set, config.feature_params());
  for (std::size_t k = 0; k < table.rows.size(); ++k) table.index.push_back(k + 1);
  save_feature_csv(table, out);
  log << "windows: " << table.rows.size() << "\nseconds: " << seconds_since(start) << '\n';
}

void cmd_train(const RunConfig& config, const std::vector<fs::path>& csvs, const fs::path& out, std::ostream& log) {
  const fis::Model model = train_model(read_tables(csvs), config);
  fis::save_model(model, out);
  log << "rules: " << model.rule_count() << '\n';
  for (std::size_t j = 0; j < model.rules.size(); ++j) {
    const auto& time = model.rules[j].time;
    log << "rule " << j + 1;
    if (time) log << ": prior " << time->prior << ", time centroid " << time->centroid << " s";
    log << '\n';
  }
}

void cmd_predict(const RunConfig& config, const fs::path& model_path, const fs::path& csv, const fs::path& out,
                 std::ostream& log) {
  const fis::Model model = fis::load_model(model_path);
  const FeatureTable table = read_feature_csv(csv);
  const Prediction p = predict_table(model, table, config);
  std::ofstream file = open_output(out);
  file << "k,tau,rho_hat,rul_hat,rul_hat_smoothed\n";
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    file << (k < table.index.size() ? table.index[k] : k + 1) << ',' << format_double(table.rows[k].tau) << ','
         << format_double(p.rho_hat[k]) << ',';
    if (p.rul[k]) file << format_double(*p.rul[k]);
    file << ',' << format_double(p.rul_smoothed[k]) << '\n';
  }
  log << "rows: " << table.rows.size() << '\n';
}

void cmd_evaluate(const RunConfig& config, const fs::path& model_path, const std::vector<fs::path>& csvs,
                  const fs::path& out, const std::optional<fs::path>& curves_path, std::ostream& log) {
  const fis::Model model = fis::load_model(model_path);
  const auto tables = read_tables(csvs);
  const fs::path curves_file =
      curves_path ? *curves_path : out.parent_path() / (out.stem().string() + "_curves" + out.extension().string());
  std::ofstream curves = open_output(curves_file);
  write_curves_header(curves);
  const auto scores = score_model(model, tables, config, &curves);

  std::ofstream file = open_output(out);
  const std::string method(fis::variant_name(model.variant));
  file << "method,bearing,rrmse\n";
  std::vector<double> values;
  for (const auto& s : scores) {
    file << method << ',' << s.bearing << ',' << format_double(s.rrmse) << '\n';
    log << s.bearing << ": " << s.rrmse << '\n';
    values.push_back(s.rrmse);
  }
  const double mean = rul::arrmse(values);
  file << method << ",ARRMSE," << format_double(mean) << '\n';
  log << "ARRMSE: " << mean << '\n';
}

void cmd_benchmark(const RunConfig& config, const std::vector<fs::path>& train, const std::vector<fs::path>& test,
                   const fs::path& out, std::ostream& log) {
  const auto train_tables = read_tables(train);
  const auto test_tables = read_tables(test);
  std::ofstream file = open_output(out);
  file << "method";
  for (const auto& t : test_tables) file << ',' << t.bearing_id;
  file << ",arrmse,seconds\n";
  for (fis::Variant variant : {fis::Variant::kBaseline, fis::Variant::kWeighted}) {
    RunConfig run = config;
    run.variant = variant;
    const auto start = Clock::now();
    const fis::Model model = train_model(train_tables, run);
    const double elapsed = seconds_since(start);
    const auto scores = score_model(model, test_tables, run);
    std::vector<double> values;
    file << fis::variant_name(variant);
    for (const auto& s : scores) {
      file << ',' << format_double(s.rrmse);
      values.push_back(s.rrmse);
    }
    const double mean = rul::arrmse(values);
    file << ',' << format_double(mean) << ',' << format_double(elapsed) << '\n';
    log << fis::variant_name(variant) << ": rules " << model.rule_count() << ", ARRMSE " << mean << ", "
        << elapsed << " s\n";
  }
}

void cmd_synth(const RunConfig& config, const SynthArgs& args, const fs::path& out, std::ostream& log) {
  const TrainingTable t = datasets::synth_bearing(config.seed, args.regimes, args.lifetime, args.noise,
                                                  {.feature_count = args.feature_count, .interval = config.interval});
  std::vector<std::string> names;
  for (int i = 0; i < args.feature_count; ++i) names.push_back("synth" + std::to_string(i + 1));
  save_feature_csv(FeatureTable::from_training_table(t, names, out.stem().string()), out);
  log << "rows: " << t.rows() << '\n';
}

}  // namespace rulfis::cli
