#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "avslice/config.hpp"
#include "avslice/model.hpp"
#include "avslice/scenario.hpp"

namespace avslice::testing {

/// Uniform double in [lo, hi) from a test-local generator.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<BaseStation> stations_of(const Deployment& d) {
  std::vector<BaseStation> out;
  for (const auto& e : d.enbs) {
    BaseStation b;
    b.id = out.size();
    b.kind = StationKind::Enb;
    b.group = e.group;
    b.position = e.position;
    b.tx_power_w = d.enb_power_w;
    b.coverage_radius_m = d.enb_radius_m;
    out.push_back(b);
  }
  for (const auto& a : d.aps) {
    BaseStation b;
    b.id = out.size();
    b.kind = StationKind::WifiAp;
    b.parent_enb = a.parent;
    b.group = d.enbs[a.parent].group;
    b.position = a.position;
    b.tx_power_w = d.ap_power_w;
    b.coverage_radius_m = ap_coverage_radius(d.ap_power_w);
    out.push_back(b);
  }
  return out;
}

/// Default 2-eNB/4-AP layout on a 1200 m road with `n` vehicles dropped
/// uniformly on two lanes.
inline Scenario small_scenario(std::uint64_t seed, std::size_t n, double ap_power_w = 2.5,
                               double sensitive_prob = 0.8) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const Deployment d = Deployment::default_layout(1200.0, ap_power_w);
  std::vector<Vehicle> vehicles;
  for (std::size_t k = 0; k < n; ++k) {
    Vehicle v;
    v.id = k;
    v.position = {uniform(rng, 0.0, 1200.0), std::uniform_int_distribution<int>(0, 1)(rng) * 3.5 + 1.75};
    v.traffic_class = uniform(rng, 0.0, 1.0) < sensitive_prob ? TrafficClass::DelaySensitive
                                                                : TrafficClass::DelayTolerant;
    vehicles.push_back(v);
  }
  RoadConfig road;
  road.rng_seed = seed;
  return Scenario::from_parts(road, sensitive_prob, ChannelModel{}, stations_of(d),
                              std::move(vehicles));
}

/// Scenario with the vehicles at explicit positions on the default layout.
inline Scenario scenario_at(const std::vector<Point>& positions, double ap_power_w = 2.5,
                            TrafficClass cls = TrafficClass::DelaySensitive) {
  const Deployment d = Deployment::default_layout(1200.0, ap_power_w);
  std::vector<Vehicle> vehicles;
  for (const auto& p : positions) {
    Vehicle v;
    v.id = vehicles.size();
    v.position = p;
    v.traffic_class = cls;
    vehicles.push_back(v);
  }
  return Scenario::from_parts(RoadConfig{}, 0.8, ChannelModel{}, stations_of(d),
                              std::move(vehicles));
}

/// Random point strictly inside the probability simplex.
inline SlicingRatios random_interior_slicing(std::mt19937_64& rng, double total_hz,
                                             double floor = 0.05) {
  std::array<double, 3> e{};
  double sum = 0.0;
  for (auto& v : e) {
    v = -std::log(uniform(rng, 1e-12, 1.0));
    sum += v;
  }
  const double scale = 1.0 - 3.0 * floor;
  return SlicingRatios::from_array(
      {floor + scale * e[0] / sum, floor + scale * e[1] / sum, floor + scale * e[2] / sum},
      total_hz);
}

/// Random binary association: covered vehicles go to the AP with probability 1/2.
inline Association random_binary_association(const Scenario& s, std::mt19937_64& rng) {
  std::vector<bool> to_ap(s.vehicle_count());
  for (std::size_t k = 0; k < to_ap.size(); ++k) to_ap[k] = s.ap_covered(k) && (rng() & 1u);
  return Association::from_choice(s, to_ap);
}

}  // namespace avslice::testing
