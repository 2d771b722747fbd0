#include "rulfis/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <string>

#include <fftw3.h>

#include "rulfis/errors.hpp"
#include "rulfis/parallel.hpp"

namespace rulfis::features {

namespace {

struct NamedFeature {
  Feature feature;
  std::string_view name;
};

constexpr NamedFeature kFeatureNames[] = {
    {Feature::kRms, "rms"},
    {Feature::kSpectralEntropy, "se"},
    {Feature::kApproximateEntropy, "ae"},
    {Feature::kLargestLyapunov, "lle"},
    {Feature::kCorrelationDimension, "cd"},
    {Feature::kDegradationIndex, "diae"},
};

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class RealForwardFft {
 public:
  explicit RealForwardFft(std::size_t n) : n_(n) {
    in_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealForwardFft() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealForwardFft(const RealForwardFft&) = delete;
  RealForwardFft& operator=(const RealForwardFft&) = delete;

  std::vector<double> power(std::span<const double> samples) {
    std::copy(samples.begin(), samples.end(), in_);
    fftw_execute(plan_);
    std::vector<double> p(n_ / 2 + 1);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
    return p;
  }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

double mean_of(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size()); }

double population_stddev(std::span<const double> x) {
  const double mu = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

bool needs(std::span<const Feature> set, Feature f) { return std::find(set.begin(), set.end(), f) != set.end(); }

}  // namespace

std::string_view feature_name(Feature feature) {
  for (const auto& nf : kFeatureNames) {
    if (nf.feature == feature) return nf.name;
  }
  return "?";
}

Feature parse_feature(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const auto& nf : kFeatureNames) {
    if (nf.name == lower) return nf.feature;
  }
  throw ConfigError("unknown feature '" + std::string(name) + "' (expected one of rms, se, ae, lle, cd, diae)");
}

std::vector<Feature> parse_feature_list(std::string_view list) {
  std::vector<Feature> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? list.size() : comma;
    std::string_view token = list.substr(start, end - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
    if (token.empty()) throw ConfigError("empty feature name in list '" + std::string(list) + "'");
    const Feature f = parse_feature(token);
    if (needs(out, f)) throw ConfigError("feature '" + std::string(token) + "' listed twice");
    out.push_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> feature_names(std::span<const Feature> set) {
  std::vector<std::string> names;
  names.reserve(set.size());
  for (Feature f : set) names.emplace_back(feature_name(f));
  return names;
}

double rms(std::span<const double> samples) {
  if (samples.empty()) throw InputError("rms of an empty window");
  double ss = 0.0;
  for (double v : samples) ss += v * v;
  return std::sqrt(ss / static_cast<double>(samples.size()));
}

std::vector<double> power_spectrum(std::span<const double> samples) {
  if (samples.empty()) throw InputError("power spectrum of an empty window");
  RealForwardFft fft(samples.size());
  return fft.power(samples);
}

double spectral_entropy(std::span<const double> samples) {
  if (samples.size() < 4) throw InputError("spectral entropy needs at least 4 samples");
  const std::vector<double> psd = power_spectrum(samples);
  const double total = std::accumulate(psd.begin(), psd.end(), 0.0);
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (double p : psd) {
    if (p <= 0.0) continue;
    const double q = p / total;
    h -= q * std::log(q);
  }
  return std::clamp(h / std::log(static_cast<double>(psd.size())), 0.0, 1.0);
}

double approximate_entropy(std::span<const double> samples, int m, double r_tol) {
  if (m < 1) throw InputError("approximate entropy embedding dimension must be >= 1");
  if (!(r_tol > 0.0)) throw InputError("approximate entropy tolerance must be positive");
  const std::size_t n = samples.size();
  const auto um = static_cast<std::size_t>(m);
  if (n <= um + 1) throw InputError("approximate entropy needs more than m + 1 samples");

  const double sd = population_stddev(samples);
  if (sd == 0.0) return 0.0;
  const double r = r_tol * sd;

  const std::size_t templates_m = n - um + 1;
  const std::size_t templates_m1 = n - um;
  // Self-matches count once per template.
  std::vector<std::size_t> count_m(templates_m, 1);
  std::vector<std::size_t> count_m1(templates_m1, 1);

  for (std::size_t i = 0; i < templates_m; ++i) {
    for (std::size_t j = i + 1; j < templates_m; ++j) {
      bool match = true;
      for (std::size_t d = 0; d < um; ++d) {
        if (std::abs(samples[i + d] - samples[j + d]) > r) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      ++count_m[i];
      ++count_m[j];
      if (j < templates_m1 && std::abs(samples[i + um] - samples[j + um]) <= r) {
        ++count_m1[i];
        ++count_m1[j];
      }
    }
  }

  auto phi = [](const std::vector<std::size_t>& counts) {
    const double total = static_cast<double>(counts.size());
    double acc = 0.0;
    for (std::size_t c : counts) acc += std::log(static_cast<double>(c) / total);
    return acc / total;
  };
  return std::max(0.0, phi(count_m) - phi(count_m1));
}

std::size_t default_baseline_len(std::size_t series_len) { return std::max<std::size_t>(2, series_len / 10); }

std::vector<double> degradation_index(std::span<const double> ae_series, std::size_t baseline_len) {
  if (baseline_len < 2) throw InputError("degradation index baseline needs at least 2 values");
  if (baseline_len >= ae_series.size()) {
    throw InputError("degradation index baseline (" + std::to_string(baseline_len) +
                     ") must be shorter than the series (" + std::to_string(ae_series.size()) + ")");
  }
  const auto baseline = ae_series.first(baseline_len);
  const double mu = mean_of(baseline);
  const double sd = std::max(population_stddev(baseline), 1e-12);
  std::vector<double> out(ae_series.size());
  std::transform(ae_series.begin(), ae_series.end(), out.begin(), [&](double v) { return std::abs(v - mu) / sd; });
  return out;
}

std::vector<double> delay_embed(std::span<const double> samples, int dim, int lag) {
  if (dim < 1 || lag < 1) throw InputError("embedding dimension and lag must be >= 1");
  const std::size_t span = static_cast<std::size_t>(dim - 1) * static_cast<std::size_t>(lag);
  if (samples.size() <= span) throw InputError("too few samples for delay embedding");
  const std::size_t points = samples.size() - span;
  std::vector<double> out(points * static_cast<std::size_t>(dim));
  for (std::size_t p = 0; p < points; ++p) {
    for (int d = 0; d < dim; ++d) {
      out[p * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d)] =
          samples[p + static_cast<std::size_t>(d) * static_cast<std::size_t>(lag)];
    }
  }
  return out;
}

int first_autocorrelation_minimum(std::span<const double> samples, int max_lag) {
  const std::size_t n = samples.size();
  if (n < 3 || max_lag < 1) return 1;
  const double mu = mean_of(samples);
  double c0 = 0.0;
  for (double v : samples) c0 += (v - mu) * (v - mu);
  if (c0 == 0.0) return 1;
  auto acf = [&](int lag) {
    double c = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < n; ++t) {
      c += (samples[t] - mu) * (samples[t + static_cast<std::size_t>(lag)] - mu);
    }
    return c / c0;
  };
  const int limit = std::min<int>(max_lag, static_cast<int>(n) - 2);
  double prev = acf(1);
  for (int lag = 2; lag <= limit; ++lag) {
    const double cur = acf(lag);
    if (cur > prev) return lag - 1;
    prev = cur;
  }
  return std::max(1, limit);
}

std::vector<double> stride_subsample(std::span<const double> samples, std::size_t max_points, std::size_t* stride_out) {
  std::size_t stride = 1;
  if (max_points > 0 && samples.size() > max_points) stride = (samples.size() + max_points - 1) / max_points;
  if (stride_out != nullptr) *stride_out = stride;
  std::vector<double> out;
  out.reserve(samples.size() / stride + 1);
  for (std::size_t i = 0; i < samples.size(); i += stride) out.push_back(samples[i]);
  return out;
}

namespace {

std::vector<double> compute_window(const SignalWindow& window, std::span<const Feature> base, const FeatureParams& params) {
  std::vector<double> values;
  values.reserve(base.size());
  const std::span<const double> x(window.samples);
  for (Feature f : base) {
    switch (f) {
      case Feature::kRms:
        values.push_back(rms(x));
        break;
      case Feature::kSpectralEntropy:
        values.push_back(spectral_entropy(x));
        break;
      case Feature::kApproximateEntropy:
        values.push_back(approximate_entropy(x, params.ae_m, params.ae_r_tol));
        break;
      case Feature::kLargestLyapunov:
        values.push_back(largest_lyapunov(x, params.lle));
        break;
      case Feature::kCorrelationDimension:
        values.push_back(correlation_dimension(x, params.cd));
        break;
      case Feature::kDegradationIndex:
        break;
    }
  }
  return values;
}

}  // namespace

std::vector<FeatureVector> extract_features(const WindowSource& source, std::span<const Feature> feature_set,
                                            const FeatureParams& params) {
  if (feature_set.empty()) throw ConfigError("feature set is empty");
  // Per-window features, with AE added when only DIAE asks for it.
  std::vector<Feature> base;
  for (Feature f : feature_set) {
    if (f != Feature::kDegradationIndex) base.push_back(f);
  }
  if (needs(feature_set, Feature::kDegradationIndex) && !needs(base, Feature::kApproximateEntropy)) {
    base.push_back(Feature::kApproximateEntropy);
  }

  const std::size_t n = source.size();
  std::vector<std::vector<double>> per_window(n);
  std::vector<double> taus(n);
  constexpr std::size_t kChunk = 64;
  for (std::size_t begin = 0; begin < n; begin += kChunk) {
    const std::size_t count = std::min(kChunk, n - begin);
    parallel_for(
        count,
        [&](std::size_t offset) {
          const SignalWindow window = source.load(begin + offset);
          if (window.samples.empty()) throw InputError("window " + std::to_string(begin + offset) + " is empty");
          per_window[begin + offset] = compute_window(window, base, params);
          taus[begin + offset] = window.timestamp;
        },
        params.threads);
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!(taus[k] > taus[k - 1])) throw InputError("window timestamps are not strictly increasing");
  }

  std::vector<double> diae;
  if (needs(feature_set, Feature::kDegradationIndex)) {
    const auto ae_pos = static_cast<std::size_t>(std::find(base.begin(), base.end(), Feature::kApproximateEntropy) - base.begin());
    std::vector<double> ae(n);
    for (std::size_t k = 0; k < n; ++k) ae[k] = per_window[k][ae_pos];
    diae = degradation_index(ae, params.diae_baseline_len.value_or(default_baseline_len(n)));
  }

  const std::optional<double> lifetime = source.lifetime();
  std::vector<FeatureVector> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    FeatureVector& fv = out[k];
    fv.tau = taus[k];
    fv.values.reserve(feature_set.size());
    for (Feature f : feature_set) {
      if (f == Feature::kDegradationIndex) {
        fv.values.push_back(diae[k]);
      } else {
        const auto pos = static_cast<std::size_t>(std::find(base.begin(), base.end(), f) - base.begin());
        fv.values.push_back(per_window[k][pos]);
      }
    }
    if (lifetime) {
      if (!(*lifetime > 0.0)) throw InputError("recording lifetime must be positive");
      fv.rho = fv.tau / *lifetime;
    }
  }
  return out;
}

std::vector<FeatureVector> extract_features(const Recording& recording, std::span<const Feature> feature_set,
                                            const FeatureParams& params) {
  return extract_features(RecordingSource(recording), feature_set, params);
}

}  // namespace rulfis::features
