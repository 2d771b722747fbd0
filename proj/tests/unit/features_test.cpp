#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rulfis/errors.hpp"
#include "rulfis/features.hpp"

namespace rulfis::features {
namespace {

std::vector<double> sinusoid(std::size_t n, double cycles_per_window, double amplitude = 1.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = amplitude * std::sin(2.0 * std::numbers::pi * cycles_per_window * static_cast<double>(t) / n + phase);
  }
  return x;
}

std::vector<double> uniform_noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

// A PHM-sized window with broadband content and a few tones.
std::vector<double> phm_like_window(unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 0.3);
  std::vector<double> x(2560);
  for (std::size_t t = 0; t < x.size(); ++t) {
    x[t] = 0.4 * std::sin(0.37 * t) + 0.1 * std::sin(1.9 * t + 0.3) + g(rng);
  }
  return x;
}

TEST(Rms, ConstantSignal) {
  const std::vector<double> x(17, 2.0);
  EXPECT_DOUBLE_EQ(rms(x), 2.0);
}

TEST(Rms, AlternatingSamples) {
  const std::vector<double> x{3, -4, 3, -4};
  EXPECT_NEAR(rms(x), std::sqrt(12.5), 1e-15);
}

TEST(Rms, MatchesDirectSumOfSquaresOnPhmWindow) {
  const auto x = phm_like_window(7);
  long double ss = 0;
  for (double v : x) ss += static_cast<long double>(v) * v;
  const double expected = static_cast<double>(std::sqrt(ss / x.size()));
  EXPECT_NEAR(rms(x), expected, 1e-12 * expected);
}

TEST(Rms, EmptyWindowIsInputError) { EXPECT_THROW(rms(std::vector<double>{}), InputError); }

TEST(Rms, ScalesWithAbsoluteAmplitude) {
  const auto x = phm_like_window(3);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -3.5 * x[i];
  EXPECT_NEAR(rms(y), 3.5 * rms(x), 1e-12);
}

TEST(SpectralEntropy, OnBinSinusoidIsZero) {
  EXPECT_NEAR(spectral_entropy(sinusoid(256, 8.0)), 0.0, 1e-9);
}

TEST(SpectralEntropy, FlatSpectrumIsOne) {
  // Inverse DFT of equal-magnitude, random-phase one-sided bins.
  const std::size_t n = 256;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> phases(n / 2 + 1);
  for (double& p : phases) p = phase(rng);
  std::vector<double> x(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t k = 0; k <= n / 2; ++k) {
      // DC and Nyquist bins are real; give them the same one-sided power.
      const double a = (k == 0 || k == n / 2) ? 0.5 : 1.0;
      const double ph = (k == 0 || k == n / 2) ? 0.0 : phases[k];
      x[t] += 2.0 * a * std::cos(2.0 * std::numbers::pi * k * t / n + ph) / n;
    }
  }
  EXPECT_NEAR(spectral_entropy(x), 1.0, 1e-9);
}

TEST(SpectralEntropy, TwoEqualTonesMatchClosedFormAndDirectDft) {
  const std::size_t n = 512;
  auto x = sinusoid(n, 10.0);
  const auto y = sinusoid(n, 37.0, 1.0, 0.7);
  for (std::size_t i = 0; i < n; ++i) x[i] += y[i];
  const double bins = n / 2 + 1;
  const double closed_form = std::log(2.0) / std::log(bins);
  EXPECT_NEAR(oracle::direct_spectral_entropy(x), closed_form, 1e-9);
  EXPECT_NEAR(spectral_entropy(x), closed_form, 1e-9);
}

TEST(SpectralEntropy, MatchesDirectDftOnNonPowerOfTwoWindow) {
  const auto x = uniform_noise(250, 4);
  EXPECT_NEAR(spectral_entropy(x), oracle::direct_spectral_entropy(x), 1e-10);
}

TEST(SpectralEntropy, AllZeroSignalIsZero) { EXPECT_EQ(spectral_entropy(std::vector<double>(64, 0.0)), 0.0); }

TEST(SpectralEntropy, TooShortIsInputError) {
  EXPECT_THROW(spectral_entropy(std::vector<double>{1, 2, 3}), InputError);
}

TEST(SpectralEntropy, InvariantUnderAmplitudeScalingAndBounded) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto x = phm_like_window(seed);
    std::vector<double> y(x);
    for (double& v : y) v *= 0.013;
    const double se = spectral_entropy(x);
    EXPECT_GE(se, 0.0);
    EXPECT_LE(se, 1.0);
    EXPECT_NEAR(spectral_entropy(y), se, 1e-12);
  }
}

TEST(ApproximateEntropy, ConstantSignalIsZero) {
  EXPECT_EQ(approximate_entropy(std::vector<double>(50, 1.25)), 0.0);
}

TEST(ApproximateEntropy, PeriodTwoSeriesMatchesBruteForce) {
  std::vector<double> x(64);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const double expected = oracle::brute_apen(x, 2, 0.2);
  EXPECT_NEAR(approximate_entropy(x, 2, 0.2), expected, 1e-12);
  // Frozen from the oracle: (32 ln(32/63) + 31 ln(31/63)) / 63 - ln(1/2).
  EXPECT_NEAR(expected, (32 * std::log(32.0 / 63) + 31 * std::log(31.0 / 63)) / 63 - std::log(0.5), 1e-12);
}

TEST(ApproximateEntropy, RandomSeriesMatchBruteForce) {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const auto x = uniform_noise(60, seed);
    for (int m : {1, 2, 3}) {
      const double expected = oracle::brute_apen(x, m, 0.25);
      EXPECT_NEAR(approximate_entropy(x, m, 0.25), std::max(0.0, expected), 1e-12) << "seed " << seed << " m " << m;
    }
  }
}

TEST(ApproximateEntropy, NoiseExceedsSinusoid) {
  const auto noise = uniform_noise(64, 5);
  const auto tone = sinusoid(64, 3.3);
  EXPECT_GT(oracle::brute_apen(noise, 2, 0.2), oracle::brute_apen(tone, 2, 0.2));
  EXPECT_GT(approximate_entropy(noise), approximate_entropy(tone));
}

TEST(ApproximateEntropy, InvariantUnderAmplitudeScaling) {
  const auto x = uniform_noise(300, 9);
  std::vector<double> y(x);
  for (double& v : y) v *= 8.0;  // power of two keeps the comparison exact
  EXPECT_EQ(approximate_entropy(x), approximate_entropy(y));
}

TEST(ApproximateEntropy, PreconditionErrors) {
  EXPECT_THROW(approximate_entropy(std::vector<double>{1, 2, 3}, 2, 0.2), InputError);
  EXPECT_THROW(approximate_entropy(std::vector<double>(20, 1.0), 2, 0.0), InputError);
}

TEST(DegradationIndex, NoDeviationGivesZeros) {
  const std::vector<double> at_mean{2.5, 2.5, 2.5, 2.5, 2.5};
  for (double v : degradation_index(at_mean, 2)) EXPECT_EQ(v, 0.0);
}

TEST(DegradationIndex, DegenerateBaselineClampsSpread) {
  const std::vector<double> ae{1, 1, 1, 1, 1};
  EXPECT_EQ(degradation_index(ae, 4)[4], 0.0);
  const std::vector<double> jump{1, 1, 1, 1, 1.5};
  EXPECT_NEAR(degradation_index(jump, 4)[4], 0.5 / 1e-12, 1.0);
}

TEST(DegradationIndex, HandArithmetic) {
  // Baseline mean 2.0, standard deviation 0.5.
  const std::vector<double> ae{1.5, 2.5, 3.0};
  EXPECT_DOUBLE_EQ(degradation_index(ae, 2)[2], 2.0);
}

TEST(DegradationIndex, BaselineNotShorterThanSeriesIsInputError) {
  EXPECT_THROW(degradation_index(std::vector<double>{1, 2, 3}, 3), InputError);
  EXPECT_THROW(degradation_index(std::vector<double>{1, 2, 3}, 1), InputError);
}

TEST(FeatureNames, ParseCaseInsensitivelyAndRejectUnknown) {
  const auto set = parse_feature_list("rms, SE,diae");
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set[0], Feature::kRms);
  EXPECT_EQ(set[2], Feature::kDegradationIndex);
  EXPECT_EQ(feature_names(set), (std::vector<std::string>{"rms", "se", "diae"}));
  try {
    parse_feature_list("rms,kurtosis");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("kurtosis"), std::string::npos);
  }
}

Recording synthetic_recording(std::size_t windows, std::size_t length, bool labeled) {
  Recording r;
  r.bearing_id = "synthetic";
  r.sample_interval = 10.0;
  for (std::size_t k = 0; k < windows; ++k) {
    SignalWindow w;
    std::mt19937 rng(static_cast<unsigned>(k));
    std::normal_distribution<double> g(0.0, 0.1 + 0.05 * k);
    w.samples.resize(length);
    for (std::size_t t = 0; t < length; ++t) w.samples[t] = std::sin(0.2 * t) + g(rng);
    w.sample_rate = 25600.0;
    w.index = k + 1;
    w.timestamp = 10.0 * k;
    r.windows.push_back(std::move(w));
  }
  if (labeled) r.lifetime = 10.0 * (windows - 1);
  return r;
}

TEST(ExtractFeatures, RmsOnlyShape) {
  const auto rec = synthetic_recording(10, 128, false);
  const std::vector<Feature> set{Feature::kRms};
  const auto out = extract_features(rec, set);
  ASSERT_EQ(out.size(), 10u);
  for (const auto& fv : out) {
    EXPECT_EQ(fv.values.size(), 1u);
    EXPECT_FALSE(fv.rho.has_value());
  }
}

TEST(ExtractFeatures, FiveFeatureAndThreeFeatureShapes) {
  const auto rec = synthetic_recording(12, 400, true);
  const auto five = extract_features(rec, parse_feature_list("rms,se,ae,lle,cd"));
  const auto three = extract_features(rec, parse_feature_list("rms,se,diae"));
  for (const auto& fv : five) EXPECT_EQ(fv.values.size(), 5u);
  for (const auto& fv : three) EXPECT_EQ(fv.values.size(), 3u);
  // Same per-window features agree between the two runs.
  for (std::size_t k = 0; k < rec.windows.size(); ++k) {
    EXPECT_EQ(five[k].values[0], three[k].values[0]);
    EXPECT_EQ(five[k].values[1], three[k].values[1]);
  }
}

TEST(ExtractFeatures, RatioFollowsElapsedOverLifetime) {
  const auto rec = synthetic_recording(8, 64, true);
  const auto out = extract_features(rec, parse_feature_list("rms"));
  for (std::size_t k = 0; k < out.size(); ++k) {
    EXPECT_EQ(out[k].tau, rec.windows[k].timestamp);
    ASSERT_TRUE(out[k].rho.has_value());
    EXPECT_EQ(*out[k].rho, rec.windows[k].timestamp / *rec.lifetime);
  }
  EXPECT_EQ(*out.back().rho, 1.0);
}

TEST(ExtractFeatures, DiaeMatchesDegradationIndexOfAe) {
  const auto rec = synthetic_recording(20, 200, false);
  const auto out = extract_features(rec, parse_feature_list("ae,diae"));
  std::vector<double> ae;
  for (const auto& fv : out) ae.push_back(fv.values[0]);
  const auto diae = degradation_index(ae, default_baseline_len(ae.size()));
  for (std::size_t k = 0; k < out.size(); ++k) EXPECT_EQ(out[k].values[1], diae[k]);
}

TEST(ExtractFeatures, ThreadCountDoesNotChangeResults) {
  const auto rec = synthetic_recording(9, 300, true);
  FeatureParams serial;
  serial.threads = 1;
  FeatureParams parallel;
  parallel.threads = 4;
  const auto set = parse_feature_list("rms,se,ae,cd");
  const auto a = extract_features(rec, set, serial);
  const auto b = extract_features(rec, set, parallel);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].values, b[k].values);
}

TEST(ExtractFeatures, NonIncreasingTimestampsRejected) {
  auto rec = synthetic_recording(4, 64, false);
  rec.windows[2].timestamp = rec.windows[1].timestamp;
  EXPECT_THROW(extract_features(rec, parse_feature_list("rms")), InputError);
}

}  // namespace
}  // namespace rulfis::features
