// Phase-space features: Rosenstein largest Lyapunov exponent and
// Grassberger-Procaccia correlation dimension.
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rulfis/errors.hpp"
#include "rulfis/features.hpp"

namespace rulfis::features {

namespace {

struct LineFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double squared_distance(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}

int mean_period_from_spectrum(std::span<const double> x) {
  const std::vector<double> p = power_spectrum(x);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    num += static_cast<double>(k) * p[k];
    den += p[k];
  }
  if (!(den > 0.0) || !(num > 0.0)) return 1;
  const double mean_bin = num / den;
  return std::max(1, static_cast<int>(std::lround(static_cast<double>(x.size()) / mean_bin)));
}

}  // namespace

LyapunovEstimate rosenstein(std::span<const double> samples, const LyapunovParams& params) {
  if (params.embed_dim < 1) throw InputError("embedding dimension must be >= 1");
  if (params.horizon < 2) throw InputError("divergence horizon must be >= 2 steps");
  std::size_t stride = 1;
  const std::vector<double> x = stride_subsample(samples, params.max_points, &stride);

  LyapunovEstimate est;
  est.embed_lag = params.embed_lag > 0 ? params.embed_lag : first_autocorrelation_minimum(x, params.max_lag);
  const int dim = params.embed_dim;
  const std::size_t span = static_cast<std::size_t>(dim - 1) * static_cast<std::size_t>(est.embed_lag);
  if (x.size() <= span + static_cast<std::size_t>(params.horizon) + 1) {
    throw InputError("too few embedded points for the Lyapunov estimate");
  }
  if (is_constant(x)) {
    est.divergence.assign(static_cast<std::size_t>(params.horizon), std::numeric_limits<double>::quiet_NaN());
    est.low_confidence = true;
    return est;
  }
  est.mean_period = params.mean_period > 0 ? params.mean_period : mean_period_from_spectrum(x);

  const std::vector<double> points = delay_embed(x, dim, est.embed_lag);
  const auto m = static_cast<std::ptrdiff_t>(points.size() / static_cast<std::size_t>(dim));
  const std::ptrdiff_t horizon = params.horizon;
  const std::ptrdiff_t exclusion = est.mean_period;
  if (m <= exclusion + 1) throw InputError("too few embedded points for the Lyapunov estimate");

  auto at = [&](std::ptrdiff_t i) { return points.data() + i * dim; };

  std::vector<double> log_sum(static_cast<std::size_t>(horizon), 0.0);
  std::vector<std::size_t> log_count(static_cast<std::size_t>(horizon), 0);
  for (std::ptrdiff_t j = 0; j < m; ++j) {
    std::ptrdiff_t nearest = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t i = 0; i < m; ++i) {
      if (std::abs(i - j) <= exclusion) continue;
      const double d = squared_distance(at(j), at(i), dim);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    if (nearest < 0) continue;
    for (std::ptrdiff_t step = 0; step < horizon; ++step) {
      if (j + step >= m || nearest + step >= m) break;
      const double d = squared_distance(at(j + step), at(nearest + step), dim);
      if (d > 0.0) {
        log_sum[static_cast<std::size_t>(step)] += 0.5 * std::log(d);
        ++log_count[static_cast<std::size_t>(step)];
      }
    }
  }

  est.divergence.resize(static_cast<std::size_t>(horizon));
  for (std::size_t s = 0; s < est.divergence.size(); ++s) {
    est.divergence[s] = log_count[s] > 0 ? log_sum[s] / static_cast<double>(log_count[s])
                                         : std::numeric_limits<double>::quiet_NaN();
  }

  const int fit_begin = std::max(0, params.fit_begin);
  const int fit_end = params.fit_end > 0 ? std::min(params.fit_end, params.horizon) : std::max(2, params.horizon / 3);
  std::vector<double> steps, logs;
  for (int s = fit_begin; s < fit_end; ++s) {
    const double v = est.divergence[static_cast<std::size_t>(s)];
    if (std::isfinite(v)) {
      steps.push_back(static_cast<double>(s));
      logs.push_back(v);
    }
  }
  if (steps.size() < 2) {
    est.low_confidence = true;
    return est;
  }
  const LineFit fit = fit_line(steps, logs);
  est.exponent = fit.slope / static_cast<double>(stride);
  est.r_squared = fit.r_squared;
  est.low_confidence = fit.r_squared < params.min_r_squared;
  return est;
}

double largest_lyapunov(std::span<const double> samples, const LyapunovParams& params) {
  return rosenstein(samples, params).exponent;
}

double correlation_dimension(std::span<const double> samples, const CorrelationDimensionParams& params) {
  if (params.embed_dim < 1) throw InputError("embedding dimension must be >= 1");
  const std::vector<double> x = stride_subsample(samples, params.max_points);
  if (x.empty()) throw InputError("correlation dimension of an empty window");
  if (is_constant(x)) return 0.0;
  const int lag = params.embed_lag > 0 ? params.embed_lag : first_autocorrelation_minimum(x, params.max_lag);
  const int dim = params.embed_dim;
  const std::vector<double> points = delay_embed(x, dim, lag);
  const std::size_t m = points.size() / static_cast<std::size_t>(dim);
  if (m < 3) throw InputError("too few embedded points for the correlation dimension");

  std::vector<double> dist;
  dist.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      dist.push_back(std::sqrt(squared_distance(points.data() + i * dim, points.data() + j * dim, dim)));
    }
  }
  std::sort(dist.begin(), dist.end());
  if (dist.back() <= 0.0) return 0.0;
  const auto pairs = static_cast<double>(dist.size());

  std::vector<double> radii = params.radius_grid;
  if (radii.empty()) {
    auto quantile = [&](double q) {
      const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(dist.size() - 1)));
      return dist[std::min(idx, dist.size() - 1)];
    };
    double lo = quantile(params.low_percentile);
    const double hi = quantile(params.high_percentile);
    if (lo <= 0.0) lo = *std::upper_bound(dist.begin(), dist.end(), 0.0);
    if (!(hi > lo)) return 0.0;
    const int g = std::max(2, params.grid_points);
    radii.resize(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
      radii[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (g - 1));
    }
  }

  std::vector<double> log_r, log_c;
  for (double r : radii) {
    if (!(r > 0.0)) continue;
    const auto within = static_cast<double>(std::upper_bound(dist.begin(), dist.end(), r) - dist.begin());
    if (within <= 0.0) continue;
    log_r.push_back(std::log(r));
    log_c.push_back(std::log(within / pairs));
  }
  if (log_r.size() < 2) return 0.0;

  // Longest run of grid points whose local slopes stay within the tolerance band.
  const std::size_t g = log_r.size();
  std::vector<double> local(g - 1);
  for (std::size_t i = 0; i + 1 < g; ++i) local[i] = (log_c[i + 1] - log_c[i]) / (log_r[i + 1] - log_r[i]);
  std::size_t best_begin = 0, best_len = 0;
  const auto min_run = static_cast<std::size_t>(std::max(2, params.min_run));
  for (std::size_t a = 0; a + 1 < g; ++a) {
    double lo = local[a], hi = local[a], sum = local[a];
    for (std::size_t b = a + 1; b < g; ++b) {
      // Run covers grid points a..b, i.e. slopes a..b-1.
      if (b > a + 1) {
        lo = std::min(lo, local[b - 1]);
        hi = std::max(hi, local[b - 1]);
        sum += local[b - 1];
      }
      const double mean = sum / static_cast<double>(b - a);
      if (mean == 0.0 || (hi - lo) / std::abs(mean) >= params.slope_tolerance) break;
      const std::size_t len = b - a + 1;
      if (len >= min_run && len > best_len) {
        best_begin = a;
        best_len = len;
      }
    }
  }
  if (best_len == 0) {
    best_begin = 0;
    best_len = g;
  }
  const LineFit fit = fit_line(std::span(log_r).subspan(best_begin, best_len),
                               std::span(log_c).subspan(best_begin, best_len));
  return std::max(0.0, fit.slope);
}

}  // namespace rulfis::features
