#include "avslice/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace avslice {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

}  // namespace

void SimulationConfig::validate() const {
  try {
    road.validate();
    traffic.validate();
    acs.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(sensitive_prob >= 0.0 && sensitive_prob <= 1.0)) {
    throw ConfigError("sensitive_prob must lie in [0, 1]");
  }
  if (!(aggregate_spectrum_hz > 0.0)) throw ConfigError("aggregate spectrum must be positive");
  if (!(ap_power_w > 0.0)) throw ConfigError("ap_power_w must be positive");
  if (!(enb_power_w > 0.0) || !(enb_radius_m > 0.0)) {
    throw ConfigError("eNB power and radius must be positive");
  }
  if (!(channel.noise_power_w > 0.0) || !(channel.exponent > 0.0)) {
    throw ConfigError("channel noise and exponent must be positive");
  }
  if (schemes.empty()) throw ConfigError("at least one scheme is required");
}

Deployment SimulationConfig::deployment() const {
  Deployment d = Deployment::default_layout(road.length_m, ap_power_w, station_offset_m);
  d.enb_power_w = enb_power_w;
  d.enb_radius_m = enb_radius_m;
  return d;
}

Scenario SimulationConfig::build_scenario() const {
  validate();
  try {
    return avslice::build_scenario(road, deployment(), sensitive_prob, road.rng_seed, channel);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SimulationConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  SimulationConfig c;
  reject_unknown(doc,
                 {"road", "seed", "sensitive_prob", "aggregate_spectrum_mhz", "ap_power_w",
                  "enb_power_w", "enb_radius_m", "station_offset_m", "channel", "traffic",
                  "acs", "schemes"},
                 "config");
  if (doc.contains("road")) {
    const auto& r = doc["road"];
    reject_unknown(r, {"length_m", "lanes", "lane_width_m", "min_headway_m", "av_density_per_m"},
                   "road");
    read(r, "length_m", c.road.length_m, "road");
    read(r, "lanes", c.road.lanes, "road");
    read(r, "lane_width_m", c.road.lane_width_m, "road");
    read(r, "min_headway_m", c.road.min_headway_m, "road");
    read(r, "av_density_per_m", c.road.av_density_per_m, "road");
  }
  read(doc, "seed", c.road.rng_seed, "config");
  read(doc, "sensitive_prob", c.sensitive_prob, "config");
  double mhz = c.aggregate_spectrum_hz / 1e6;
  read(doc, "aggregate_spectrum_mhz", mhz, "config");
  c.aggregate_spectrum_hz = mhz * 1e6;
  read(doc, "ap_power_w", c.ap_power_w, "config");
  read(doc, "enb_power_w", c.enb_power_w, "config");
  read(doc, "enb_radius_m", c.enb_radius_m, "config");
  read(doc, "station_offset_m", c.station_offset_m, "config");
  if (doc.contains("channel")) {
    const auto& ch = doc["channel"];
    reject_unknown(ch, {"enb_intercept_db", "ap_intercept_db", "exponent", "noise_dbm"},
                   "channel");
    read(ch, "enb_intercept_db", c.channel.enb_intercept_db, "channel");
    read(ch, "ap_intercept_db", c.channel.ap_intercept_db, "channel");
    read(ch, "exponent", c.channel.exponent, "channel");
    if (ch.contains("noise_dbm")) {
      double dbm = 0.0;
      read(ch, "noise_dbm", dbm, "channel");
      c.channel.noise_power_w = dbm_to_watts(dbm);
    }
  }
  if (doc.contains("traffic")) {
    const auto& t = doc["traffic"];
    reject_unknown(t,
                   {"sensitive_packet_bits", "sensitive_arrival_per_s", "max_delay_s",
                    "violation_prob", "tolerant_packet_bits", "tolerant_arrival_per_s"},
                   "traffic");
    read(t, "sensitive_packet_bits", c.traffic.sensitive_packet_bits, "traffic");
    read(t, "sensitive_arrival_per_s", c.traffic.sensitive_arrival_per_s, "traffic");
    read(t, "max_delay_s", c.traffic.max_delay_s, "traffic");
    read(t, "violation_prob", c.traffic.violation_prob, "traffic");
    read(t, "tolerant_packet_bits", c.traffic.tolerant_packet_bits, "traffic");
    read(t, "tolerant_arrival_per_s", c.traffic.tolerant_arrival_per_s, "traffic");
  }
  if (doc.contains("acs")) {
    const auto& a = doc["acs"];
    reject_unknown(a,
                   {"kappa1", "kappa2", "theta1", "theta2", "max_iters", "p_max_w",
                    "initial_power_w", "p1_tol", "p1_max_iters", "p3_max_rounds",
                    "p3_power_tol", "association_threshold"},
                   "acs");
    read(a, "kappa1", c.acs.kappa1, "acs");
    read(a, "kappa2", c.acs.kappa2, "acs");
    read(a, "theta1", c.acs.theta1, "acs");
    read(a, "theta2", c.acs.theta2, "acs");
    read(a, "max_iters", c.acs.max_iters, "acs");
    read(a, "p_max_w", c.acs.p_max_w, "acs");
    read(a, "initial_power_w", c.acs.initial_power_w, "acs");
    read(a, "p1_tol", c.acs.p1_tol, "acs");
    read(a, "p1_max_iters", c.acs.p1_max_iters, "acs");
    read(a, "p3_max_rounds", c.acs.p3_max_rounds, "acs");
    read(a, "p3_power_tol", c.acs.p3_power_tol, "acs");
    read(a, "association_threshold", c.acs.association_threshold, "acs");
  }
  if (doc.contains("schemes")) {
    std::vector<std::string> names;
    read(doc, "schemes", names, "config");
    c.schemes.clear();
    for (const auto& n : names) {
      const auto s = scheme_from_string(n);
      if (!s) throw ConfigError("unknown scheme '" + n + "'");
      c.schemes.push_back(*s);
    }
  }
  c.validate();
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const SimulationConfig& c) {
  json doc;
  doc["road"] = {{"length_m", c.road.length_m},
                 {"lanes", c.road.lanes},
                 {"lane_width_m", c.road.lane_width_m},
                 {"min_headway_m", c.road.min_headway_m},
                 {"av_density_per_m", c.road.av_density_per_m}};
  doc["seed"] = c.road.rng_seed;
  doc["sensitive_prob"] = c.sensitive_prob;
  doc["aggregate_spectrum_mhz"] = c.aggregate_spectrum_hz / 1e6;
  doc["ap_power_w"] = c.ap_power_w;
  doc["enb_power_w"] = c.enb_power_w;
  doc["enb_radius_m"] = c.enb_radius_m;
  doc["station_offset_m"] = c.station_offset_m;
  doc["channel"] = {{"enb_intercept_db", c.channel.enb_intercept_db},
                    {"ap_intercept_db", c.channel.ap_intercept_db},
                    {"exponent", c.channel.exponent},
                    {"noise_dbm", watts_to_dbm(c.channel.noise_power_w)}};
  doc["traffic"] = {{"sensitive_packet_bits", c.traffic.sensitive_packet_bits},
                    {"sensitive_arrival_per_s", c.traffic.sensitive_arrival_per_s},
                    {"max_delay_s", c.traffic.max_delay_s},
                    {"violation_prob", c.traffic.violation_prob},
                    {"tolerant_packet_bits", c.traffic.tolerant_packet_bits},
                    {"tolerant_arrival_per_s", c.traffic.tolerant_arrival_per_s}};
  doc["acs"] = {{"kappa1", c.acs.kappa1},
                {"kappa2", c.acs.kappa2},
                {"theta1", c.acs.theta1},
                {"theta2", c.acs.theta2},
                {"max_iters", c.acs.max_iters},
                {"p_max_w", c.acs.p_max_w},
                {"initial_power_w", c.acs.initial_power_w},
                {"p1_tol", c.acs.p1_tol},
                {"p1_max_iters", c.acs.p1_max_iters},
                {"p3_max_rounds", c.acs.p3_max_rounds},
                {"p3_power_tol", c.acs.p3_power_tol},
                {"association_threshold", c.acs.association_threshold}};
  std::vector<std::string> names;
  for (Scheme s : c.schemes) names.emplace_back(to_string(s));
  doc["schemes"] = names;
  return doc.dump(2) + "\n";
}

}  // namespace avslice
