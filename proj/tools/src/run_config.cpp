#include "run_config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rulfis/errors.hpp"

namespace rulfis::cli {

using Json = nlohmann::ordered_json;

features::FeatureParams RunConfig::feature_params() const {
  features::FeatureParams p;
  p.ae_m = ae_m;
  p.ae_r_tol = ae_r_tol;
  if (diae_baseline_len > 0) p.diae_baseline_len = diae_baseline_len;
  p.threads = threads;
  return p;
}

std::vector<features::Feature> RunConfig::feature_set() const {
  std::vector<features::Feature> out;
  std::set<features::Feature> seen;
  for (const auto& name : features) {
    const features::Feature f = features::parse_feature(name);
    if (!seen.insert(f).second) throw ConfigError("feature '" + name + "' listed twice");
    out.push_back(f);
  }
  if (out.empty()) throw ConfigError("feature set is empty");
  return out;
}

std::string RunConfig::to_json() const {
  Json j;
  j["version"] = kConfigVersion;
  j["format"] = format;
  j["channel"] = channel;
  j["sample_rate"] = sample_rate;
  j["interval"] = interval;
  j["features"] = features;
  j["approximate_entropy"] = {{"m", ae_m}, {"r_tol", ae_r_tol}};
  j["degradation_index"] = {{"baseline_len", diae_baseline_len}};
  j["threads"] = threads;
  j["clustering"] = {{"ra", clusters.influence_radius},
                     {"rb", clusters.squash_radius},
                     {"accept", clusters.accept_ratio},
                     {"reject", clusters.reject_ratio}};
  j["variant"] = std::string(fis::variant_name(variant));
  j["smoothing"] = {{"order", sg_order}, {"frame", sg_frame}};
  j["seed"] = seed;
  return j.dump();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunConfig::validate() const {
  if (format != "phm" && format != "ims" && format != "csv") {
    throw ConfigError("unknown format '" + format + "' (expected phm, ims or csv)");
  }
  if (!(sample_rate > 0.0)) throw ConfigError("sample_rate must be positive");
  if (!(interval > 0.0)) throw ConfigError("interval must be positive");
  if (ae_m < 1) throw ConfigError("approximate_entropy.m must be >= 1");
  if (!(ae_r_tol > 0.0)) throw ConfigError("approximate_entropy.r_tol must be positive");
  if (sg_order < 0) throw ConfigError("smoothing.order must be >= 0");
  if (sg_frame < 1 || sg_frame % 2 == 0) throw ConfigError("smoothing frame must be a positive odd number");
  if (sg_frame <= sg_order) throw ConfigError("smoothing frame must exceed the polynomial order");
  clusters.validate();
  (void)feature_set();
}

namespace {

template <typename T>
T get(const Json& node, const char* key, const std::string& path) {
  try {
    return node.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config key '" + path + key + "' has the wrong type");
  }
}

void reject_unknown(const Json& node, std::initializer_list<const char*> known, const std::string& path) {
  for (const auto& item : node.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw ConfigError("unknown config key '" + path + item.key() + "'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, bool* rb_set) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"version", "format", "channel", "sample_rate", "interval", "features", "approximate_entropy",
                  "degradation_index", "threads", "clustering", "variant", "smoothing", "seed"},
                 "");
  if (!doc.contains("version")) throw ConfigError("config lacks 'version'");
  if (get<int>(doc, "version", "") != kConfigVersion) {
    throw ConfigError("unsupported config version " + doc.at("version").dump());
  }

  RunConfig c;
  if (doc.contains("format")) c.format = get<std::string>(doc, "format", "");
  if (doc.contains("channel")) c.channel = get<std::size_t>(doc, "channel", "");
  if (doc.contains("sample_rate")) c.sample_rate = get<double>(doc, "sample_rate", "");
  if (doc.contains("interval")) c.interval = get<double>(doc, "interval", "");
  if (doc.contains("features")) c.features = get<std::vector<std::string>>(doc, "features", "");
  if (doc.contains("threads")) c.threads = get<unsigned>(doc, "threads", "");
  if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc, "seed", "");
  if (doc.contains("variant")) c.variant = fis::parse_variant(get<std::string>(doc, "variant", ""));
  if (doc.contains("approximate_entropy")) {
    const Json& ae = doc.at("approximate_entropy");
    reject_unknown(ae, {"m", "r_tol"}, "approximate_entropy.");
    if (ae.contains("m")) c.ae_m = get<int>(ae, "m", "approximate_entropy.");
    if (ae.contains("r_tol")) c.ae_r_tol = get<double>(ae, "r_tol", "approximate_entropy.");
  }
  if (doc.contains("degradation_index")) {
    const Json& di = doc.at("degradation_index");
    reject_unknown(di, {"baseline_len"}, "degradation_index.");
    if (di.contains("baseline_len")) c.diae_baseline_len = get<std::size_t>(di, "baseline_len", "degradation_index.");
  }
  bool rb_given = false;
  if (doc.contains("clustering")) {
    const Json& cl = doc.at("clustering");
    reject_unknown(cl, {"ra", "rb", "accept", "reject"}, "clustering.");
    if (cl.contains("ra")) c.clusters = clustering::ClusterConfig::with_radius(get<double>(cl, "ra", "clustering."));
    if (cl.contains("rb")) {
      c.clusters.squash_radius = get<double>(cl, "rb", "clustering.");
      rb_given = true;
    }
    if (cl.contains("accept")) c.clusters.accept_ratio = get<double>(cl, "accept", "clustering.");
    if (cl.contains("reject")) c.clusters.reject_ratio = get<double>(cl, "reject", "clustering.");
  }
  if (doc.contains("smoothing")) {
    const Json& sm = doc.at("smoothing");
    reject_unknown(sm, {"order", "frame"}, "smoothing.");
    if (sm.contains("order")) c.sg_order = get<int>(sm, "order", "smoothing.");
    if (sm.contains("frame")) c.sg_frame = get<int>(sm, "frame", "smoothing.");
  }
  if (rb_set) *rb_set = rb_given;
  return c;
}

RunConfig load_config(const std::filesystem::path& path, bool* rb_set) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), rb_set);
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file, const Overrides& flags) {
  bool rb_set = false;
  RunConfig c = file ? load_config(*file, &rb_set) : RunConfig{};
  if (flags.format) c.format = *flags.format;
  if (flags.channel) c.channel = *flags.channel;
  if (flags.sample_rate) c.sample_rate = *flags.sample_rate;
  if (flags.interval) c.interval = *flags.interval;
  if (flags.features) {
    c.features.clear();
    for (features::Feature f : features::parse_feature_list(*flags.features)) {
      c.features.emplace_back(features::feature_name(f));
    }
  }
  if (flags.variant) c.variant = fis::parse_variant(*flags.variant);
  if (flags.ra) {
    c.clusters.influence_radius = *flags.ra;
    if (!rb_set) c.clusters.squash_radius = 1.25 * *flags.ra;
  }
  if (flags.rb) c.clusters.squash_radius = *flags.rb;
  if (flags.sg_frame) c.sg_frame = *flags.sg_frame;
  if (flags.seed) c.seed = *flags.seed;
  if (flags.threads) c.threads = *flags.threads;
  c.validate();
  return c;
}

}  // namespace rulfis::cli
