#include "rulfis/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "rulfis/errors.hpp"

namespace rulfis::datasets {

namespace fs = std::filesystem;

namespace {

std::string where(const fs::path& file, std::size_t line) { return file.string() + ":" + std::to_string(line); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Comma- or semicolon-delimited when either appears, whitespace-delimited otherwise.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  const std::size_t hard = line.find_first_of(",;");
  if (hard != std::string_view::npos) {
    const char sep = line[hard];
    std::size_t start = 0;
    while (true) {
      const std::size_t next = line.find(sep, start);
      fields.push_back(trim(line.substr(start, next == std::string_view::npos ? std::string_view::npos : next - start)));
      if (next == std::string_view::npos) break;
      start = next + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double parse_number(std::string_view text, const fs::path& file, std::size_t line) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw LoadError(where(file, line) + ": malformed number '" + std::string(text) + "'");
  }
  return value;
}

// Reads column `channel` of every non-empty line. `expected_columns` of 0
// accepts any count with at least channel + 1 fields.
std::vector<double> read_channel(const fs::path& file, std::size_t channel, std::size_t expected_columns) {
  std::ifstream in(file);
  if (!in) throw LoadError(file.string() + ": cannot open");
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (expected_columns != 0 && fields.size() != expected_columns) {
      throw LoadError(where(file, line_no) + ": expected " + std::to_string(expected_columns) + " columns, found " +
                      std::to_string(fields.size()));
    }
    if (fields.size() <= channel) {
      throw LoadError(where(file, line_no) + ": channel " + std::to_string(channel) + " beyond " +
                      std::to_string(fields.size()) + " columns");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const double v = parse_number(fields[c], file, line_no);
      if (c == channel) samples.push_back(v);
    }
  }
  return samples;
}

void require_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw LoadError(dir.string() + ": not a directory");
}

std::vector<fs::path> regular_files_sorted(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

PhmSource::PhmSource(fs::path dir) : dir_(std::move(dir)) {
  require_directory(dir_);
  std::map<long, fs::path> by_index;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("acc_", 0) != 0 || entry.path().extension() != ".csv") continue;
    const std::string digits = name.substr(4, name.size() - 8);
    long index = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw LoadError(entry.path().string() + ": file name does not carry a numeric index");
    }
    if (!by_index.emplace(index, entry.path()).second) {
      throw LoadError(entry.path().string() + ": duplicate file index " + std::to_string(index) + " (also " +
                      by_index.at(index).string() + ")");
    }
  }
  if (by_index.empty()) throw LoadError(dir_.string() + ": no acc_*.csv files");
  for (auto& [index, path] : by_index) files_.push_back(path);
}

SignalWindow PhmSource::load(std::size_t position) const {
  const fs::path& file = files_.at(position);
  SignalWindow w;
  w.samples = read_channel(file, 4, 6);
  if (w.samples.size() != kPhmWindowLength) {
    throw LoadError(file.string() + ": expected " + std::to_string(kPhmWindowLength) + " rows, found " +
                    std::to_string(w.samples.size()));
  }
  w.sample_rate = kPhmSampleRate;
  w.index = position + 1;
  w.timestamp = kPhmInterval * static_cast<double>(position);
  return w;
}

std::optional<double> PhmSource::lifetime() const { return kPhmInterval * static_cast<double>(files_.size() - 1); }

std::optional<double> parse_ims_timestamp(const std::string& name) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0, consumed = 0;
  if (std::sscanf(name.c_str(), "%d.%d.%d.%d.%d.%d%n", &y, &mo, &d, &h, &mi, &s, &consumed) != 6 ||
      static_cast<std::size_t>(consumed) != name.size()) {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!date.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) return std::nullopt;
  const auto t = sys_days{date} + hours{h} + minutes{mi} + seconds{s};
  return static_cast<double>(t.time_since_epoch().count());
}

ImsSource::ImsSource(fs::path dir, std::size_t channel) : dir_(std::move(dir)), channel_(channel) {
  require_directory(dir_);
  std::vector<double> absolute;
  for (const fs::path& file : regular_files_sorted(dir_)) {
    const auto t = parse_ims_timestamp(file.filename().string());
    if (!t) continue;
    if (!absolute.empty() && !(*t > absolute.back())) {
      throw LoadError(file.string() + ": timestamp is not after the preceding file " + files_.back().string());
    }
    files_.push_back(file);
    absolute.push_back(*t);
  }
  if (files_.empty()) throw LoadError(dir_.string() + ": no timestamp-named files");
  timestamps_.reserve(absolute.size());
  for (double t : absolute) timestamps_.push_back(t - absolute.front());
}

SignalWindow ImsSource::load(std::size_t position) const {
  const fs::path& file = files_.at(position);
  SignalWindow w;
  w.samples = read_channel(file, channel_, 0);
  if (w.samples.size() != kImsWindowLength) {
    throw LoadError(file.string() + ": expected " + std::to_string(kImsWindowLength) + " rows, found " +
                    std::to_string(w.samples.size()));
  }
  w.sample_rate = kImsSampleRate;
  w.index = position + 1;
  w.timestamp = timestamps_.at(position);
  return w;
}

std::optional<double> ImsSource::lifetime() const { return timestamps_.back(); }

TableDirSource::TableDirSource(fs::path dir, std::size_t channel, double sample_rate, double interval)
    : dir_(std::move(dir)), channel_(channel), sample_rate_(sample_rate), interval_(interval) {
  require_directory(dir_);
  if (!(sample_rate_ > 0.0)) throw ConfigError("sample rate must be positive");
  if (!(interval_ > 0.0)) throw ConfigError("observation interval must be positive");
  files_ = regular_files_sorted(dir_);
  if (files_.empty()) throw LoadError(dir_.string() + ": no files");
}

SignalWindow TableDirSource::load(std::size_t position) const {
  SignalWindow w;
  w.samples = read_channel(files_.at(position), channel_, 0);
  if (w.samples.empty()) throw LoadError(files_.at(position).string() + ": no samples");
  w.sample_rate = sample_rate_;
  w.index = position + 1;
  w.timestamp = interval_ * static_cast<double>(position);
  return w;
}

std::optional<double> TableDirSource::lifetime() const { return interval_ * static_cast<double>(files_.size() - 1); }

Recording materialize(const features::WindowSource& source, std::string bearing_id, double sample_interval) {
  Recording r;
  r.bearing_id = std::move(bearing_id);
  r.sample_interval = sample_interval;
  r.windows.reserve(source.size());
  for (std::size_t k = 0; k < source.size(); ++k) r.windows.push_back(source.load(k));
  r.lifetime = source.lifetime();
  return r;
}

Recording load_phm(const fs::path& dir) {
  return materialize(PhmSource(dir), dir.filename().string(), kPhmInterval);
}

Recording load_ims(const fs::path& dir, std::size_t channel) {
  ImsSource source(dir, channel);
  const auto& t = source.timestamps();
  const double interval = t.size() > 1 ? t[1] - t[0] : 0.0;
  return materialize(source, dir.filename().string(), interval);
}

}  // namespace rulfis::datasets
