#include "avslice/serialization.hpp"

#include <stdexcept>

#include "json.hpp"

namespace avslice {

using nlohmann::json;

namespace {

const char* kind_name(StationKind k) { return k == StationKind::Enb ? "enb" : "wifi_ap"; }
const char* group_name(EnbGroup g) { return g == EnbGroup::B1 ? "B1" : "B2"; }
const char* class_name(TrafficClass c) {
  return c == TrafficClass::DelaySensitive ? "delay_sensitive" : "delay_tolerant";
}

template <typename E>
E parse_enum(const std::string& v, std::initializer_list<std::pair<const char*, E>> names) {
  for (const auto& [n, e] : names) {
    if (v == n) return e;
  }
  throw std::invalid_argument("unknown enumerator '" + v + "'");
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json doc;
  const auto& r = s.road();
  doc["road"] = {{"length_m", r.length_m},
                 {"lanes", r.lanes},
                 {"lane_width_m", r.lane_width_m},
                 {"min_headway_m", r.min_headway_m},
                 {"av_density_per_m", r.av_density_per_m},
                 {"rng_seed", r.rng_seed}};
  doc["sensitive_prob"] = s.sensitive_prob();
  const auto& ch = s.channel();
  doc["channel"] = {{"enb_intercept_db", ch.enb_intercept_db},
                    {"ap_intercept_db", ch.ap_intercept_db},
                    {"exponent", ch.exponent},
                    {"noise_power_w", ch.noise_power_w}};
  json stations = json::array();
  for (const auto& b : s.stations()) {
    json st = {{"kind", kind_name(b.kind)},
               {"group", group_name(b.group)},
               {"x", b.position.x},
               {"y", b.position.y},
               {"tx_power_w", b.tx_power_w},
               {"coverage_radius_m", b.coverage_radius_m}};
    if (b.kind == StationKind::WifiAp) st["parent_enb"] = b.parent_enb;
    stations.push_back(std::move(st));
  }
  doc["stations"] = std::move(stations);
  json vehicles = json::array();
  for (const auto& v : s.vehicles()) {
    vehicles.push_back(
        {{"x", v.position.x}, {"y", v.position.y}, {"class", class_name(v.traffic_class)}});
  }
  doc["vehicles"] = std::move(vehicles);
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    RoadConfig road;
    const auto& r = doc.at("road");
    road.length_m = r.at("length_m").get<double>();
    road.lanes = r.at("lanes").get<int>();
    road.lane_width_m = r.at("lane_width_m").get<double>();
    road.min_headway_m = r.at("min_headway_m").get<double>();
    road.av_density_per_m = r.at("av_density_per_m").get<double>();
    road.rng_seed = r.at("rng_seed").get<std::uint64_t>();
    ChannelModel ch;
    const auto& c = doc.at("channel");
    ch.enb_intercept_db = c.at("enb_intercept_db").get<double>();
    ch.ap_intercept_db = c.at("ap_intercept_db").get<double>();
    ch.exponent = c.at("exponent").get<double>();
    ch.noise_power_w = c.at("noise_power_w").get<double>();

    std::vector<BaseStation> stations;
    for (const auto& st : doc.at("stations")) {
      BaseStation b;
      b.id = stations.size();
      b.kind = parse_enum<StationKind>(st.at("kind").get<std::string>(),
                                       {{"enb", StationKind::Enb}, {"wifi_ap", StationKind::WifiAp}});
      b.group = parse_enum<EnbGroup>(st.at("group").get<std::string>(),
                                     {{"B1", EnbGroup::B1}, {"B2", EnbGroup::B2}});
      b.position = {st.at("x").get<double>(), st.at("y").get<double>()};
      b.tx_power_w = st.at("tx_power_w").get<double>();
      b.coverage_radius_m = st.at("coverage_radius_m").get<double>();
      if (b.kind == StationKind::WifiAp) b.parent_enb = st.at("parent_enb").get<std::size_t>();
      stations.push_back(b);
    }
    std::vector<Vehicle> vehicles;
    for (const auto& v : doc.at("vehicles")) {
      Vehicle veh;
      veh.id = vehicles.size();
      veh.position = {v.at("x").get<double>(), v.at("y").get<double>()};
      veh.traffic_class = parse_enum<TrafficClass>(
          v.at("class").get<std::string>(),
          {{"delay_sensitive", TrafficClass::DelaySensitive},
           {"delay_tolerant", TrafficClass::DelayTolerant}});
      vehicles.push_back(veh);
    }
    return Scenario::from_parts(road, doc.at("sensitive_prob").get<double>(), ch,
                                std::move(stations), std::move(vehicles));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
}

std::string scheme_result_to_json(const SchemeResult& r) {
  json doc;
  doc["scheme"] = std::string(to_string(r.scheme));
  doc["feasible"] = r.feasible;
  doc["binary_association"] = r.binary;
  if (r.feasible) {
    doc["throughput_bps"] = r.throughput_bps;
  } else {
    doc["throughput_bps"] = nullptr;
  }
  doc["qos_violations"] = r.qos_violations;
  doc["iterations"] = r.iterations;
  doc["slicing"] = {{"beta1", r.slicing.beta1},
                    {"beta2", r.slicing.beta2},
                    {"beta_w", r.slicing.beta_w},
                    {"total_hz", r.slicing.total_hz}};
  doc["ap_powers_w"] = r.powers;
  doc["association"] = {{"x_enb", r.association.x_enb}, {"x_ap", r.association.x_ap}};
  doc["allocation_hz"] = {{"enb", r.allocation.r_enb},
                          {"ap_other", r.allocation.r_ap_other},
                          {"ap_wifi", r.allocation.r_ap_wifi}};
  doc["rates_bps"] = r.rates;
  return doc.dump(2) + "\n";
}

}  // namespace avslice
