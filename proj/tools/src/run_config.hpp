#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rulfis/clustering.hpp"
#include "rulfis/features.hpp"
#include "rulfis/fis.hpp"

namespace rulfis::cli {

inline constexpr int kConfigVersion = 1;

/// Everything a command needs beyond its input and output paths.
struct RunConfig {
  std::string format = "phm";  // phm | ims | csv
  std::size_t channel = 0;
  double sample_rate = 25600.0;  // csv format only
  double interval = 10.0;        // csv format only
  std::vector<std::string> features{"rms"};
  int ae_m = 2;
  double ae_r_tol = 0.2;
  std::size_t diae_baseline_len = 0;  // 0 = default fraction of the series
  unsigned threads = 0;
  clustering::ClusterConfig clusters;
  fis::Variant variant = fis::Variant::kWeighted;
  int sg_order = 2;
  int sg_frame = 61;
  std::uint64_t seed = 0;

  [[nodiscard]] features::FeatureParams feature_params() const;
  [[nodiscard]] std::vector<features::Feature> feature_set() const;

  /// Canonical JSON text; stable key order so equal configs hash equally.
  [[nodiscard]] std::string to_json() const;
  /// 64-bit FNV-1a of to_json(), as 16 hex digits.
  [[nodiscard]] std::string hash() const;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Values from the command line; unset ones leave the file or default value alone.
struct Overrides {
  std::optional<std::string> format;
  std::optional<std::size_t> channel;
  std::optional<double> sample_rate;
  std::optional<double> interval;
  std::optional<std::string> features;
  std::optional<std::string> variant;
  std::optional<double> ra;
  std::optional<double> rb;
  std::optional<int> sg_frame;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

/// Reads a config file. Unknown keys and version mismatches are config errors.
/// `rb_set` reports whether the file fixed the squash radius explicitly.
RunConfig parse_config(const std::string& text, bool* rb_set = nullptr);
RunConfig load_config(const std::filesystem::path& path, bool* rb_set = nullptr);

/// File (if any), then flags. Without an explicit squash radius it follows 1.25 r_a.
RunConfig resolve_config(const std::optional<std::filesystem::path>& file, const Overrides& flags);

}  // namespace rulfis::cli
