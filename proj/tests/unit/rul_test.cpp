#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rulfis/errors.hpp"
#include "rulfis/rul.hpp"

namespace rulfis::rul {
namespace {

TEST(PulRatio, Values) {
  EXPECT_EQ(pul_ratio(50.0, 200.0), 0.25);
  EXPECT_EQ(pul_ratio(0.0, 200.0), 0.0);
  EXPECT_EQ(pul_ratio(200.0, 200.0), 1.0);
  EXPECT_THROW(pul_ratio(250.0, 200.0), InputError);
  EXPECT_THROW(pul_ratio(-1.0, 200.0), InputError);
  EXPECT_THROW(pul_ratio(0.0, 0.0), InputError);
}

TEST(RulFromRatio, Values) {
  EXPECT_EQ(*rul_from_ratio(0.25, 50.0), 150.0);
  EXPECT_EQ(*rul_from_ratio(1.0, 300.0), 0.0);
  EXPECT_EQ(*rul_from_ratio(0.5, 1000.0), 1000.0);
  EXPECT_FALSE(rul_from_ratio(0.0, 10.0).has_value());
  EXPECT_FALSE(rul_from_ratio(5e-4, 10.0).has_value());
  EXPECT_TRUE(rul_from_ratio(kRatioFloor, 10.0).has_value());
  EXPECT_THROW(rul_from_ratio(1.2, 10.0), InputError);
  EXPECT_THROW(rul_from_ratio(0.5, -1.0), InputError);
}

TEST(RulFromRatio, InvertsRatio) {
  for (double life : {1000.0, 28030.0, 7.5}) {
    for (double frac : {0.01, 0.3, 0.77, 1.0}) {
      const double tau = frac * life;
      const double rul = *rul_from_ratio(pul_ratio(tau, life), tau);
      EXPECT_NEAR(rul, life - tau, 4 * std::numeric_limits<double>::epsilon() * life);
    }
  }
}

TEST(SavitzkyGolay, CentreWeightFrameFive) {
  const auto c = savitzky_golay_coefficients(2, 5, 2);
  EXPECT_DOUBLE_EQ(c[2], 17.0 / 35.0);
  EXPECT_DOUBLE_EQ(c[0], -3.0 / 35.0);
  EXPECT_DOUBLE_EQ(c[1], 12.0 / 35.0);
  double sum = 0;
  for (double w : c) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(SavitzkyGolay, ConstantAndQuadraticPreserved) {
  std::vector<double> flat(100, 0.42), quad(100);
  for (int i = 0; i < 100; ++i) quad[i] = 0.003 * i * i - 0.1 * i + 2.0;
  for (double v : savitzky_golay(flat, 2, 61)) EXPECT_NEAR(v, 0.42, 1e-12);
  const auto s = savitzky_golay(quad, 2, 61);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(s[i], quad[i], 1e-9);
}

TEST(SavitzkyGolay, MatchesLocalFitIncludingEdges) {
  std::mt19937 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> y(40);
  for (double& v : y) v = g(rng);
  const int frame = 11, order = 3, half = frame / 2;
  const auto s = savitzky_golay(y, order, frame);
  for (int i = 0; i < 40; ++i) {
    const int start = std::clamp(i - half, 0, 40 - frame);
    EXPECT_NEAR(s[i], oracle::local_poly_fit(y, start, frame, order, i - start), 1e-10) << i;
  }
}

TEST(SavitzkyGolay, Linear) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(80), y(80), mix(80);
  for (int i = 0; i < 80; ++i) {
    x[i] = g(rng);
    y[i] = g(rng);
    mix[i] = 2.0 * x[i] - 0.5 * y[i];
  }
  const auto sx = savitzky_golay(x, 2, 21), sy = savitzky_golay(y, 2, 21), sm = savitzky_golay(mix, 2, 21);
  for (int i = 0; i < 80; ++i) EXPECT_NEAR(sm[i], 2.0 * sx[i] - 0.5 * sy[i], 1e-12);
}

TEST(SavitzkyGolay, InvalidFrames) {
  const std::vector<double> y(100, 1.0);
  EXPECT_THROW(savitzky_golay(y, 2, 60), ConfigError);
  EXPECT_THROW(savitzky_golay(y, 3, 3), ConfigError);
}

TEST(SavitzkyGolay, ShortSeriesPassesThrough) {
  const std::vector<double> y{0.1, 0.5, 0.2};
  EXPECT_EQ(savitzky_golay(y, 2, 61), y);
}

TEST(Rrmse, Values) {
  const std::vector<double> truth{0.5, 1.0}, exact{0.5, 1.0}, off{0.6, 1.0};
  EXPECT_EQ(rrmse(truth, exact), 0.0);
  EXPECT_NEAR(rrmse(truth, off), std::sqrt(0.02), 1e-15);
  EXPECT_NEAR(std::sqrt(0.02), 0.14142, 1e-5);
}

TEST(Rrmse, SkipsZeroTruth) {
  const std::vector<double> truth{0.0, 0.5, 1.0}, est{0.3, 0.6, 1.0};
  EXPECT_NEAR(rrmse(truth, est), std::sqrt(0.02), 1e-15);
}

TEST(Rrmse, ScaleInvariant) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> t(30), e(30), ts(30), es(30);
  for (int i = 0; i < 30; ++i) {
    t[i] = u(rng);
    e[i] = u(rng);
    ts[i] = 7.0 * t[i];
    es[i] = 7.0 * e[i];
  }
  EXPECT_NEAR(rrmse(t, e), rrmse(ts, es), 1e-12);
  EXPECT_GE(rrmse(t, e), 0.0);
}

TEST(Rrmse, MismatchedLengths) {
  const std::vector<double> a{0.5, 1.0}, b{0.5};
  EXPECT_THROW(rrmse(a, b), InputError);
}

TEST(Arrmse, Mean) {
  const std::vector<double> two{1.0, 3.0};
  EXPECT_EQ(arrmse(two), 2.0);
  const std::vector<double> table{0.6979, 0.8263, 0.8106, 0.8556, 0.7991};
  EXPECT_NEAR(arrmse(table), 0.7979, 5e-5);
}

}  // namespace
}  // namespace rulfis::rul
