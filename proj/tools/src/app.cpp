#include "app.hpp"

#include <algorithm>
#include <exception>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rulfis/errors.hpp"

namespace rulfis::cli {

namespace {

struct Flags {
  std::optional<fs::path> config;
  Overrides overrides;
  fs::path out;
};

void add_config(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
}

void add_out(CLI::App* cmd, Flags& f, const std::string& what) {
  cmd->add_option("--out", f.out, what)->required();
}

void add_cluster_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--ra", f.overrides.ra, "cluster influence radius (normalized units)");
  cmd->add_option("--rb", f.overrides.rb, "squash radius (default 1.25 * ra)");
  cmd->add_option("--seed", f.overrides.seed, "seed recorded with the model");
}

void add_smoothing_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--sg-frame", f.overrides.sg_frame, "Savitzky-Golay frame for the smoothed RUL (odd)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bearing remaining-useful-life estimation with Takagi-Sugeno fuzzy models", "rulfis"};
  app.require_subcommand(1);
  Flags f;

  fs::path input;
  auto* features = app.add_subcommand("features", "extract a feature CSV from a recording directory");
  features->add_option("input", input, "recording directory")->required()->check(CLI::ExistingDirectory);
  features->add_option("--format", f.overrides.format, "phm, ims or csv (a directory of per-window tables)");
  features->add_option("--features", f.overrides.features, "comma list of rms,se,ae,lle,cd,diae");
  features->add_option("--channel", f.overrides.channel, "column to read (ims and csv formats)");
  features->add_option("--sample-rate", f.overrides.sample_rate, "samples per second (csv format)");
  features->add_option("--interval", f.overrides.interval, "seconds between windows (csv format)");
  features->add_option("--threads", f.overrides.threads, "worker threads (0 = hardware)");
  add_config(features, f);
  add_out(features, f, "feature CSV to write");

  std::vector<fs::path> csvs;
  auto* train = app.add_subcommand("train", "identify a model from labeled feature CSVs");
  train->add_option("csvs", csvs, "labeled feature CSVs, one per bearing")->required()->check(CLI::ExistingFile);
  train->add_option("--variant", f.overrides.variant, "baseline or weighted");
  add_cluster_flags(train, f);
  add_config(train, f);
  add_out(train, f, "model file to write");

  fs::path model;
  auto* predict = app.add_subcommand("predict", "estimate the life ratio and RUL for one feature CSV");
  predict->add_option("csv", input, "feature CSV")->required()->check(CLI::ExistingFile);
  predict->add_option("--model", model, "model file")->required()->check(CLI::ExistingFile);
  add_smoothing_flags(predict, f);
  add_config(predict, f);
  add_out(predict, f, "prediction CSV to write");

  std::optional<fs::path> curves;
  auto* evaluate = app.add_subcommand("evaluate", "score a model on labeled feature CSVs");
  evaluate->add_option("csvs", csvs, "labeled feature CSVs")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--model", model, "model file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--curves", curves, "per-point CSV (default: <out>_curves.csv)");
  add_smoothing_flags(evaluate, f);
  add_config(evaluate, f);
  add_out(evaluate, f, "summary CSV to write");

  std::vector<fs::path> test;
  auto* benchmark = app.add_subcommand("benchmark", "train and score both variants on the same bearings");
  benchmark->add_option("--train", csvs, "labeled training CSVs")->required()->check(CLI::ExistingFile);
  benchmark->add_option("--test", test, "labeled test CSVs")->required()->check(CLI::ExistingFile);
  add_cluster_flags(benchmark, f);
  add_config(benchmark, f);
  add_out(benchmark, f, "comparison CSV to write");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "write a synthetic run-to-failure feature CSV");
  synth->add_option("--seed", f.overrides.seed, "noise seed");
  synth->add_option("--regimes", synth_args.regimes, "degradation regimes")->check(CLI::PositiveNumber);
  synth->add_option("--lifetime", synth_args.lifetime, "seconds to failure")->check(CLI::PositiveNumber);
  synth->add_option("--noise", synth_args.noise, "noise std as a fraction of each feature's range");
  synth->add_option("--feature-count", synth_args.feature_count, "number of features")->check(CLI::PositiveNumber);
  synth->add_option("--interval", f.overrides.interval, "seconds between rows");
  add_config(synth, f);
  add_out(synth, f, "feature CSV to write");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig config = resolve_config(f.config, f.overrides);
    if (features->parsed()) cmd_features(config, input, f.out, out);
    if (train->parsed()) cmd_train(config, csvs, f.out, out);
    if (predict->parsed()) cmd_predict(config, model, input, f.out, out);
    if (evaluate->parsed()) cmd_evaluate(config, model, csvs, f.out, curves, out);
    if (benchmark->parsed()) cmd_benchmark(config, csvs, test, f.out, out);
    if (synth->parsed()) cmd_synth(config, synth_args, f.out, out);
  } catch (const ConfigError& e) {
    err << "rulfis: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "rulfis: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rulfis::cli
