#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rulfis/features.hpp"
#include "rulfis/types.hpp"

namespace rulfis::datasets {

inline constexpr std::size_t kPhmWindowLength = 2560;
inline constexpr double kPhmSampleRate = 25600.0;
inline constexpr double kPhmInterval = 10.0;
inline constexpr std::size_t kImsWindowLength = 20480;
inline constexpr double kImsSampleRate = 20000.0;

/// PRONOSTIA bearing directory: acc_NNNNN.csv files with columns
/// hour, minute, second, microsecond, horizontal, vertical. Only the
/// horizontal channel is read; tau_k = 10 (k - 1) s by file order.
class PhmSource final : public features::WindowSource {
 public:
  explicit PhmSource(std::filesystem::path dir);
  std::size_t size() const override { return files_.size(); }
  SignalWindow load(std::size_t position) const override;
  std::optional<double> lifetime() const override;
  [[nodiscard]] const std::vector<std::filesystem::path>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
};

/// IMS test directory: files named YYYY.MM.DD.hh.mm.ss, whitespace-separated
/// channel columns, 20480 rows per file. tau_k is the file-name time relative
/// to the first file.
class ImsSource final : public features::WindowSource {
 public:
  ImsSource(std::filesystem::path dir, std::size_t channel);
  std::size_t size() const override { return files_.size(); }
  SignalWindow load(std::size_t position) const override;
  std::optional<double> lifetime() const override;
  [[nodiscard]] const std::vector<double>& timestamps() const { return timestamps_; }

 private:
  std::filesystem::path dir_;
  std::size_t channel_;
  std::vector<std::filesystem::path> files_;
  std::vector<double> timestamps_;
};

/// Generic directory of one-window-per-file sample tables (comma, semicolon
/// or whitespace separated), ordered by file name, evenly spaced in time.
class TableDirSource final : public features::WindowSource {
 public:
  TableDirSource(std::filesystem::path dir, std::size_t channel, double sample_rate, double interval);
  std::size_t size() const override { return files_.size(); }
  SignalWindow load(std::size_t position) const override;
  std::optional<double> lifetime() const override;

 private:
  std::filesystem::path dir_;
  std::size_t channel_;
  double sample_rate_;
  double interval_;
  std::vector<std::filesystem::path> files_;
};

/// Parses "YYYY.MM.DD.hh.mm.ss" into seconds since the Unix epoch (UTC).
std::optional<double> parse_ims_timestamp(const std::string& name);

Recording load_phm(const std::filesystem::path& dir);
Recording load_ims(const std::filesystem::path& dir, std::size_t channel = 0);
Recording materialize(const features::WindowSource& source, std::string bearing_id, double sample_interval);

struct SynthOptions {
  int feature_count = 2;
  double interval = 10.0;  // seconds between observations
};

/// Piecewise-linear run-to-failure feature trajectories over `regimes`
/// contiguous, equal-length stretches of life. Feature shapes depend only on
/// the regime count and feature index; the seed drives additive Gaussian
/// noise with standard deviation `noise` times each feature's clean range.
TrainingTable synth_bearing(std::uint64_t seed, int regimes, double lifetime, double noise,
                            const SynthOptions& options = {});

}  // namespace rulfis::datasets
