#include "rulfis/feature_csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rulfis/errors.hpp"

namespace rulfis {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw InputError("cannot format number");
  return std::string(buf.data(), ptr);
}

bool FeatureTable::labeled() const {
  if (rows.empty()) return false;
  for (const auto& r : rows) {
    if (!r.rho) return false;
  }
  return true;
}

TrainingTable FeatureTable::to_training_table() const { return TrainingTable::from_features(rows); }

FeatureTable FeatureTable::from_training_table(const TrainingTable& table, std::vector<std::string> names,
                                               std::string bearing_id) {
  if (static_cast<Eigen::Index>(names.size()) != table.features()) throw InputError("feature name count mismatch");
  FeatureTable out;
  out.bearing_id = std::move(bearing_id);
  out.feature_names = std::move(names);
  for (Eigen::Index k = 0; k < table.rows(); ++k) {
    FeatureVector fv;
    for (Eigen::Index i = 0; i < table.features(); ++i) fv.values.push_back(table.inputs(k, i));
    fv.tau = table.has_tau() ? table.tau(k) : static_cast<double>(k);
    fv.rho = table.rho(k);
    out.index.push_back(static_cast<std::size_t>(k + 1));
    out.rows.push_back(std::move(fv));
  }
  return out;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "k,tau";
  for (const auto& name : table.feature_names) out << ',' << name;
  out << ",rho\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const FeatureVector& fv = table.rows[r];
    out << (r < table.index.size() ? table.index[r] : r + 1) << ',' << format_double(fv.tau);
    for (double v : fv.values) out << ',' << format_double(v);
    out << ',';
    if (fv.rho) out << format_double(*fv.rho);
    out << '\n';
  }
}

void save_feature_csv(const FeatureTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_feature_csv(out, table);
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  for (auto& f : fields) {
    if (!f.empty() && f.back() == '\r') f.pop_back();
  }
  return fields;
}

double to_number(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw LoadError(where + ": malformed number '" + text + "'");
  }
  return v;
}

}  // namespace

FeatureTable read_feature_csv(std::istream& in, std::string bearing_id) {
  FeatureTable table;
  table.bearing_id = std::move(bearing_id);
  const std::string& src = table.bearing_id;
  std::string line;
  if (!std::getline(in, line)) throw LoadError(src + ": empty feature file");
  const auto header = split_commas(line);
  if (header.size() < 4 || header[0] != "k" || header[1] != "tau" || header.back() != "rho") {
    throw LoadError(src + ":1: header must be k,tau,<features...>,rho");
  }
  table.feature_names.assign(header.begin() + 2, header.end() - 1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::string where = src + ":" + std::to_string(line_no);
    const auto fields = split_commas(line);
    if (fields.size() != header.size()) {
      throw LoadError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    const double k = to_number(fields[0], where);
    if (k < 0 || k != static_cast<double>(static_cast<std::size_t>(k))) throw LoadError(where + ": k is not an index");
    FeatureVector fv;
    fv.tau = to_number(fields[1], where);
    for (std::size_t c = 2; c + 1 < fields.size(); ++c) fv.values.push_back(to_number(fields[c], where));
    if (!fields.back().empty()) {
      const double rho = to_number(fields.back(), where);
      if (rho < 0.0 || rho > 1.0) throw LoadError(where + ": rho outside [0, 1]");
      fv.rho = rho;
    }
    table.index.push_back(static_cast<std::size_t>(k));
    table.rows.push_back(std::move(fv));
  }
  return table;
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string() + ": cannot open");
  FeatureTable t = read_feature_csv(in, path.stem().string());
  return t;
}

}  // namespace rulfis
