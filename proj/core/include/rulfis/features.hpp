#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulfis/types.hpp"

namespace rulfis::features {

enum class Feature { kRms, kSpectralEntropy, kApproximateEntropy, kLargestLyapunov, kCorrelationDimension, kDegradationIndex };

/// Canonical upper-case column name: RMS, SE, AE, LLE, CD, DIAE.
std::string_view feature_name(Feature feature);

/// Case-insensitive lookup. Throws ConfigError naming the offender.
Feature parse_feature(std::string_view name);

/// Parses a comma-separated list such as "rms,se,diae".
std::vector<Feature> parse_feature_list(std::string_view list);

std::vector<std::string> feature_names(std::span<const Feature> set);

double rms(std::span<const double> samples);

/// Shannon entropy of the one-sided power spectrum (bins 0..N/2, DC included),
/// normalized to sum 1 and divided by ln(bin count). An all-zero signal gives 0.
double spectral_entropy(std::span<const double> samples);

/// Pincus ApEn(m, r) with r = r_tol * population standard deviation and
/// self-matches counted. Chebyshev distance between templates.
double approximate_entropy(std::span<const double> samples, int m = 2, double r_tol = 0.2);

struct LyapunovParams {
  int embed_dim = 5;
  int embed_lag = 0;    // 0: first autocorrelation minimum, capped at max_lag
  int max_lag = 10;
  int mean_period = 0;  // 0: reciprocal of the spectrum's mean frequency
  int horizon = 30;     // divergence curve length in steps
  int fit_begin = 0;    // fit range [fit_begin, fit_end) on the curve
  int fit_end = 0;      // 0: first third of the horizon
  std::size_t max_points = 2000;
  double min_r_squared = 0.9;
};

struct LyapunovEstimate {
  double exponent = 0.0;  // per original sample step
  double r_squared = 0.0;
  bool low_confidence = false;
  int embed_lag = 1;
  int mean_period = 1;
  std::vector<double> divergence;  // mean log distance per step, NaN when undefined
};

/// Rosenstein estimate of the largest Lyapunov exponent.
LyapunovEstimate rosenstein(std::span<const double> samples, const LyapunovParams& params = {});

double largest_lyapunov(std::span<const double> samples, const LyapunovParams& params = {});

struct CorrelationDimensionParams {
  int embed_dim = 5;
  int embed_lag = 0;  // 0: same automatic rule as LyapunovParams
  int max_lag = 10;
  std::vector<double> radius_grid;  // empty: generated from pairwise distance percentiles
  int grid_points = 20;
  double low_percentile = 0.02;
  double high_percentile = 0.98;
  int min_run = 5;
  double slope_tolerance = 0.2;
  std::size_t max_points = 2000;
};

/// Grassberger-Procaccia slope of log C(r) against log r.
double correlation_dimension(std::span<const double> samples, const CorrelationDimensionParams& params = {});

/// |AE_k - mean_B| / std_B against the first `baseline_len` values.
std::vector<double> degradation_index(std::span<const double> ae_series, std::size_t baseline_len);

/// Default healthy baseline: the first 10% of observations, at least 2.
std::size_t default_baseline_len(std::size_t series_len);

// Shared helpers, exposed for tests and benchmarks.
std::vector<double> delay_embed(std::span<const double> samples, int dim, int lag);
int first_autocorrelation_minimum(std::span<const double> samples, int max_lag);
std::vector<double> stride_subsample(std::span<const double> samples, std::size_t max_points,
                                     std::size_t* stride_out = nullptr);
std::vector<double> power_spectrum(std::span<const double> samples);

struct FeatureParams {
  int ae_m = 2;
  double ae_r_tol = 0.2;
  LyapunovParams lle;
  CorrelationDimensionParams cd;
  std::optional<std::size_t> diae_baseline_len;
  unsigned threads = 0;
};

/// Random access to a recording's windows without holding all of them.
class WindowSource {
 public:
  virtual ~WindowSource() = default;
  [[nodiscard]] virtual std::size_t size() const = 0;
  [[nodiscard]] virtual SignalWindow load(std::size_t position) const = 0;
  /// Time of the final observation for run-to-failure recordings.
  [[nodiscard]] virtual std::optional<double> lifetime() const = 0;
};

/// Adapts an in-memory Recording.
class RecordingSource final : public WindowSource {
 public:
  explicit RecordingSource(const Recording& recording) : recording_(recording) {}
  std::size_t size() const override { return recording_.windows.size(); }
  SignalWindow load(std::size_t position) const override { return recording_.windows.at(position); }
  std::optional<double> lifetime() const override { return recording_.lifetime; }

 private:
  const Recording& recording_;
};

/// One FeatureVector per window, values ordered like `feature_set`. When the
/// source reports a lifetime, rho_k = tau_k / tau_R.
std::vector<FeatureVector> extract_features(const WindowSource& source, std::span<const Feature> feature_set,
                                            const FeatureParams& params = {});

std::vector<FeatureVector> extract_features(const Recording& recording, std::span<const Feature> feature_set,
                                            const FeatureParams& params = {});

}  // namespace rulfis::features
