#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "rulfis/datasets.hpp"
#include "rulfis/errors.hpp"

namespace rulfis::datasets {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("rulfis_ds_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<double> write_phm(const fs::path& file, unsigned seed, std::size_t rows = kPhmWindowLength) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::ofstream out(file);
  std::vector<double> horizontal;
  for (std::size_t i = 0; i < rows; ++i) {
    const double h = std::round(g(rng) * 1000.0) / 1000.0;
    horizontal.push_back(h);
    out << "9,39,39," << 65664 + i << ',' << h << ',' << -0.146 << '\n';
  }
  return horizontal;
}

void write_ims(const fs::path& file, std::size_t columns, std::size_t rows = kImsWindowLength) {
  std::ofstream out(file);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns; ++c) out << (c ? "\t" : "") << 0.01 * static_cast<double>(c + 1) * std::sin(0.1 * i);
    out << '\n';
  }
}

TEST(Phm, LoadsOrderedWindowsLosslessly) {
  TempDir dir;
  std::vector<std::vector<double>> written;
  for (int i = 1; i <= 3; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "acc_%05d.csv", i);
    written.push_back(write_phm(dir.path() / name, i));
  }
  const Recording r = load_phm(dir.path());
  ASSERT_EQ(r.windows.size(), 3u);
  EXPECT_EQ(r.windows[0].timestamp, 0.0);
  EXPECT_EQ(r.windows[1].timestamp, 10.0);
  EXPECT_EQ(r.windows[2].timestamp, 20.0);
  EXPECT_EQ(r.lifetime, 20.0);
  EXPECT_EQ(r.windows[1].sample_rate, kPhmSampleRate);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.windows[i].samples, written[i]);
}

TEST(Phm, ShortFileRejected) {
  TempDir dir;
  write_phm(dir.path() / "acc_00001.csv", 1, kPhmWindowLength - 1);
  EXPECT_THROW(load_phm(dir.path()), LoadError);
}

TEST(Phm, EmptyOrMissingDirectoryRejected) {
  TempDir dir;
  EXPECT_THROW(PhmSource{dir.path()}, LoadError);
  EXPECT_THROW(PhmSource{dir.path() / "missing"}, LoadError);
}

TEST(Phm, SemicolonSeparatedFilesAccepted) {
  TempDir dir;
  {
    std::ofstream out(dir.path() / "acc_00001.csv");
    for (std::size_t i = 0; i < kPhmWindowLength; ++i) out << "9;39;39;1;" << 0.5 << ";0.1\n";
  }
  const Recording r = load_phm(dir.path());
  EXPECT_EQ(r.windows[0].samples.front(), 0.5);
}

TEST(Ims, TimestampsRelativeToFirstFile) {
  TempDir dir;
  write_ims(dir.path() / "2004.02.12.10.32.39", 4);
  write_ims(dir.path() / "2004.02.12.10.42.39", 4);
  const ImsSource src(dir.path(), 2);
  ASSERT_EQ(src.size(), 2u);
  EXPECT_EQ(src.timestamps()[0], 0.0);
  EXPECT_EQ(src.timestamps()[1], 600.0);
  EXPECT_EQ(src.lifetime(), 600.0);
  const SignalWindow w = src.load(1);
  EXPECT_EQ(w.samples.size(), kImsWindowLength);
  EXPECT_NEAR(w.samples[5], 0.03 * std::sin(0.5), 1e-7);
}

TEST(Ims, ChannelBeyondColumnsRejected) {
  TempDir dir;
  write_ims(dir.path() / "2004.02.12.10.32.39", 4);
  const ImsSource src(dir.path(), 7);
  EXPECT_THROW(src.load(0), LoadError);
}

TEST(Ims, TimestampParsing) {
  EXPECT_EQ(parse_ims_timestamp("1970.01.01.00.00.00"), 0.0);
  EXPECT_EQ(parse_ims_timestamp("2004.02.12.10.32.39"), 1076581959.0);
  EXPECT_FALSE(parse_ims_timestamp("notes.txt").has_value());
  EXPECT_FALSE(parse_ims_timestamp("2004.13.12.10.32.39").has_value());
}

TEST(Synthetic, DeterministicPerSeed) {
  const TrainingTable a = synth_bearing(7, 3, 2000.0, 0.05);
  const TrainingTable b = synth_bearing(7, 3, 2000.0, 0.05);
  const TrainingTable c = synth_bearing(8, 3, 2000.0, 0.05);
  EXPECT_EQ(a.inputs, b.inputs);
  EXPECT_NE(a.inputs, c.inputs);
  EXPECT_EQ(a.rho, c.rho);
}

TEST(Synthetic, ShapeAndLabels) {
  const TrainingTable t = synth_bearing(1, 3, 2000.0, 0.0, {.feature_count = 4, .interval = 10.0});
  EXPECT_EQ(t.rows(), 200);
  EXPECT_EQ(t.features(), 4);
  EXPECT_EQ(t.tau(0), 10.0);
  EXPECT_EQ(t.tau(t.rows() - 1), 2000.0);
  EXPECT_EQ(t.rho(t.rows() - 1), 1.0);
  for (Eigen::Index k = 1; k < t.rows(); ++k) EXPECT_GT(t.rho(k), t.rho(k - 1));
}

TEST(Synthetic, NoiselessSingleRegimeIsAffineInTime) {
  const TrainingTable t = synth_bearing(1, 1, 1000.0, 0.0);
  for (Eigen::Index i = 0; i < t.features(); ++i) {
    const double slope = (t.inputs(1, i) - t.inputs(0, i)) / (t.rho(1) - t.rho(0));
    for (Eigen::Index k = 2; k < t.rows(); ++k) {
      EXPECT_NEAR(t.inputs(k, i), t.inputs(0, i) + slope * (t.rho(k) - t.rho(0)), 1e-9);
    }
  }
}

TEST(Synthetic, InvalidArguments) {
  EXPECT_THROW(synth_bearing(1, 0, 1000.0, 0.0), InputError);
  EXPECT_THROW(synth_bearing(1, 2, -5.0, 0.0), InputError);
  EXPECT_THROW(synth_bearing(1, 2, 1000.0, -0.1), InputError);
}

}  // namespace
}  // namespace rulfis::datasets
