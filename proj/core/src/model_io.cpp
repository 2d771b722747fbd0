#include "rulfis/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rulfis/errors.hpp"

namespace rulfis::fis {

namespace {

using nlohmann::json;

json to_array(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd from_array(const json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a.at(i).get<double>();
  return v;
}

}  // namespace

std::string serialize_model(const Model& model) {
  model.validate();
  json doc;
  doc["schema"] = "rulfis.model";
  doc["version"] = kModelSchemaVersion;
  doc["variant"] = std::string(variant_name(model.variant));
  doc["feature_set"] = model.feature_set;
  doc["sigmas"] = to_array(model.sigmas);
  json rules = json::array();
  for (const Rule& rule : model.rules) {
    json r;
    r["center"] = to_array(rule.center);
    r["weight"] = rule.weight;
    r["slope"] = to_array(rule.slope);
    r["intercept"] = rule.intercept;
    if (rule.time) {
      r["time"] = {{"prior", rule.time->prior}, {"centroid", rule.time->centroid}, {"variance", rule.time->variance}};
    }
    rules.push_back(std::move(r));
  }
  doc["rules"] = std::move(rules);
  doc["provenance"] = model.provenance;
  return doc.dump(2) + "\n";
}

Model deserialize_model(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("schema").get<std::string>() != "rulfis.model") throw ConfigError("not a rulfis model document");
    const int version = doc.at("version").get<int>();
    if (version != kModelSchemaVersion) {
      throw ConfigError("unsupported model schema version " + std::to_string(version));
    }
    Model model;
    model.variant = parse_variant(doc.at("variant").get<std::string>());
    model.feature_set = doc.at("feature_set").get<std::vector<std::string>>();
    model.sigmas = from_array(doc.at("sigmas"));
    for (const json& r : doc.at("rules")) {
      Rule rule;
      rule.center = from_array(r.at("center"));
      rule.weight = r.at("weight").get<double>();
      rule.slope = from_array(r.at("slope"));
      rule.intercept = r.at("intercept").get<double>();
      if (r.contains("time")) {
        const json& t = r.at("time");
        rule.time = mixture::TimeCluster{t.at("prior").get<double>(), t.at("centroid").get<double>(),
                                         t.at("variance").get<double>()};
      }
      model.rules.push_back(std::move(rule));
    }
    if (doc.contains("provenance")) model.provenance = doc.at("provenance").get<std::map<std::string, std::string>>();
    model.validate();
    return model;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  const std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model file " + path.string());
  out << text;
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_model(buffer.str());
}

}  // namespace rulfis::fis
