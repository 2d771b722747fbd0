#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "rulfis/errors.hpp"
#include "rulfis/feature_csv.hpp"

namespace rulfis {
namespace {

FeatureTable sample(bool labeled) {
  FeatureTable t;
  t.bearing_id = "b1";
  t.feature_names = {"rms", "se"};
  t.index = {1, 2, 3};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 3; ++k) {
    FeatureVector fv;
    fv.values = {u(rng), u(rng) * 1e-7};
    fv.tau = 10.0 * k;
    if (labeled) fv.rho = fv.tau / 20.0;
    t.rows.push_back(fv);
  }
  return t;
}

TEST(FeatureCsv, HeaderAndEmptyRho) {
  std::ostringstream out;
  write_feature_csv(out, sample(false));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,tau,rms,se,rho");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 4), "1,0,");
  EXPECT_EQ(line.back(), ',');
}

TEST(FeatureCsv, RoundTripIsExact) {
  for (bool labeled : {false, true}) {
    const FeatureTable t = sample(labeled);
    std::ostringstream out;
    write_feature_csv(out, t);
    std::istringstream in(out.str());
    const FeatureTable back = read_feature_csv(in, "b1");
    EXPECT_EQ(back.feature_names, t.feature_names);
    EXPECT_EQ(back.index, t.index);
    EXPECT_EQ(back.labeled(), labeled);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      EXPECT_EQ(back.rows[k].values, t.rows[k].values);
      EXPECT_EQ(back.rows[k].tau, t.rows[k].tau);
      EXPECT_EQ(back.rows[k].rho, t.rows[k].rho);
    }
  }
}

TEST(FeatureCsv, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123, -2.5, std::numeric_limits<double>::denorm_min()}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
}

TEST(FeatureCsv, TrainingTableConversion) {
  const FeatureTable t = sample(true);
  const TrainingTable tt = t.to_training_table();
  EXPECT_EQ(tt.rows(), 3);
  EXPECT_EQ(tt.inputs(1, 0), t.rows[1].values[0]);
  EXPECT_EQ(tt.rho(2), 1.0);
  EXPECT_EQ(tt.tau(2), 20.0);
  EXPECT_THROW(sample(false).to_training_table(), InputError);
}

TEST(FeatureCsv, MalformedInputRejected) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_feature_csv(in, "x");
  };
  EXPECT_THROW(parse(""), LoadError);
  EXPECT_THROW(parse("tau,k,rms,rho\n"), LoadError);
  EXPECT_THROW(parse("k,tau,rms,rho\n1,0,0.5\n"), LoadError);
  EXPECT_THROW(parse("k,tau,rms,rho\n1,0,abc,0.1\n"), LoadError);
  EXPECT_THROW(parse("k,tau,rms,rho\n1,0,0.5,1.5\n"), LoadError);
  EXPECT_NO_THROW(parse("k,tau,rms,rho\n1,0,0.5,0.5\n"));
}

TEST(FeatureCsv, MissingFile) {
  EXPECT_THROW(read_feature_csv(std::filesystem::path("/nonexistent/f.csv")), LoadError);
}

}  // namespace
}  // namespace rulfis
