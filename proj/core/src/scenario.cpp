#include "avslice/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace avslice {

namespace {

// Portable uniform draw in [0, 1): standard distributions are
// implementation-defined, which would break seed replay across toolchains.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_ap_nesting(const BaseStation& ap, const BaseStation& parent) {
  const double reach = distance(ap.position, parent.position) + ap.coverage_radius_m;
  if (reach > parent.coverage_radius_m + 1e-9) {
    throw std::invalid_argument("AP " + std::to_string(ap.id) +
                                " coverage extends outside parent eNB " +
                                std::to_string(parent.id));
  }
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::size_t RoadConfig::vehicles_per_lane() const {
  return static_cast<std::size_t>(std::llround(av_density_per_m * length_m));
}

void RoadConfig::validate() const {
  if (!(length_m > 0.0) || lanes < 1 || !(lane_width_m > 0.0)) {
    throw std::invalid_argument("road geometry must be positive");
  }
  if (!(min_headway_m > 0.0)) {
    throw std::invalid_argument("minimum headway must be positive");
  }
  if (!(av_density_per_m >= 0.0) || av_density_per_m * min_headway_m > 1.0 + 1e-12) {
    throw std::invalid_argument("vehicle density infeasible for the minimum headway");
  }
  const auto n = vehicles_per_lane();
  if (n > 1 && static_cast<double>(n - 1) * min_headway_m > length_m + 1e-9) {
    throw std::invalid_argument("too many vehicles per lane for the road length");
  }
}

EnbGroup opposite(EnbGroup g) { return g == EnbGroup::B1 ? EnbGroup::B2 : EnbGroup::B1; }

double ChannelModel::enb_pathloss_db(double d_m) const {
  return enb_intercept_db - 10.0 * exponent * std::log10(std::max(d_m, 1.0));
}

double ChannelModel::ap_pathloss_db(double d_m) const {
  return ap_intercept_db - 10.0 * exponent * std::log10(std::max(d_m, 1.0));
}

double ChannelModel::pathloss_db(StationKind kind, double d_m) const {
  return kind == StationKind::Enb ? enb_pathloss_db(d_m) : ap_pathloss_db(d_m);
}

double ChannelModel::gain(StationKind kind, double d_m) const {
  return db_to_linear(pathloss_db(kind, d_m));
}

double ap_coverage_radius(double tx_power_w) {
  return std::max(0.0, 200.0 + (tx_power_w - 1.0) * (60.0 / 1.5));
}

Deployment Deployment::default_layout(double road_length_m, double ap_power_w,
                                      double station_offset_m) {
  Deployment d;
  d.ap_power_w = ap_power_w;
  const double y = -station_offset_m;
  d.enbs = {{{road_length_m / 4.0, y}, EnbGroup::B1},
            {{3.0 * road_length_m / 4.0, y}, EnbGroup::B2}};
  for (int i = 0; i < 4; ++i) {
    const double x = (2.0 * i + 1.0) * road_length_m / 8.0;
    d.aps.push_back({{x, y}, static_cast<std::size_t>(i / 2)});
  }
  return d;
}

Scenario Scenario::from_parts(RoadConfig road, double sensitive_prob,
                              ChannelModel channel,
                              std::vector<BaseStation> stations,
                              std::vector<Vehicle> vehicles) {
  Scenario s;
  s.road_ = road;
  s.sensitive_prob_ = sensitive_prob;
  s.channel_ = channel;
  s.stations_ = std::move(stations);
  s.vehicles_ = std::move(vehicles);
  s.derive();
  return s;
}

void Scenario::derive() {
  enb_count_ = 0;
  bool seen_ap = false;
  for (std::size_t n = 0; n < stations_.size(); ++n) {
    auto& st = stations_[n];
    st.id = n;
    if (st.kind == StationKind::Enb) {
      if (seen_ap) throw std::invalid_argument("stations must list eNBs before APs");
      ++enb_count_;
    } else {
      seen_ap = true;
    }
  }
  if (enb_count_ == 0) throw std::invalid_argument("scenario needs at least one eNB");
  for (std::size_t i = 0; i < ap_count(); ++i) {
    auto& a = stations_[enb_count_ + i];
    if (a.parent_enb >= enb_count_) {
      throw std::invalid_argument("AP parent must reference an eNB");
    }
    a.group = stations_[a.parent_enb].group;
    check_ap_nesting(a, stations_[a.parent_enb]);
  }
  for (std::size_t k = 0; k < vehicles_.size(); ++k) vehicles_[k].id = k;

  const std::size_t nv = vehicles_.size();
  gains_.assign(stations_.size() * nv, 0.0);
  for (std::size_t n = 0; n < stations_.size(); ++n) {
    for (std::size_t k = 0; k < nv; ++k) {
      gains_[n * nv + k] = channel_gain(channel_, stations_[n], vehicles_[k]);
    }
  }

  serving_enb_.assign(nv, kNone);
  covering_ap_.assign(nv, kNone);
  enb_members_.assign(enb_count_, {});
  enb_only_members_.assign(enb_count_, {});
  ap_members_.assign(ap_count(), {});
  for (std::size_t k = 0; k < nv; ++k) {
    const Point p = vehicles_[k].position;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < enb_count_; ++j) {
      const double d = distance(p, stations_[j].position);
      if (d <= stations_[j].coverage_radius_m && d < best) {
        best = d;
        serving_enb_[k] = j;
      }
    }
    if (serving_enb_[k] == kNone) {
      throw std::invalid_argument("vehicle " + std::to_string(k) +
                                  " is outside every eNB coverage disc");
    }
    best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ap_count(); ++i) {
      const auto& a = stations_[enb_count_ + i];
      if (a.parent_enb != serving_enb_[k]) continue;
      const double d = distance(p, a.position);
      if (d <= a.coverage_radius_m && d < best) {
        best = d;
        covering_ap_[k] = i;
      }
    }
    enb_members_[serving_enb_[k]].push_back(k);
    if (covering_ap_[k] == kNone) {
      enb_only_members_[serving_enb_[k]].push_back(k);
    } else {
      ap_members_[covering_ap_[k]].push_back(k);
    }
  }
}

std::vector<double> Scenario::nominal_ap_powers() const {
  std::vector<double> p(ap_count());
  for (std::size_t i = 0; i < ap_count(); ++i) p[i] = ap(i).tx_power_w;
  return p;
}

Scenario build_scenario(const RoadConfig& road, const Deployment& deployment,
                        double sensitive_prob, std::uint64_t seed,
                        const ChannelModel& channel) {
  road.validate();
  if (!(sensitive_prob >= 0.0 && sensitive_prob <= 1.0)) {
    throw std::invalid_argument("sensitive probability must lie in [0, 1]");
  }

  std::vector<BaseStation> stations;
  for (const auto& e : deployment.enbs) {
    BaseStation b;
    b.kind = StationKind::Enb;
    b.group = e.group;
    b.position = e.position;
    b.tx_power_w = deployment.enb_power_w;
    b.coverage_radius_m = deployment.enb_radius_m;
    stations.push_back(b);
  }
  for (const auto& a : deployment.aps) {
    if (a.parent >= deployment.enbs.size()) {
      throw std::invalid_argument("AP parent index out of range");
    }
    BaseStation b;
    b.kind = StationKind::WifiAp;
    b.parent_enb = a.parent;
    b.group = deployment.enbs[a.parent].group;
    b.position = a.position;
    b.tx_power_w = deployment.ap_power_w;
    b.coverage_radius_m = ap_coverage_radius(deployment.ap_power_w);
    stations.push_back(b);
  }

  std::mt19937_64 rng(seed);
  std::vector<Vehicle> vehicles;
  const std::size_t per_lane = road.vehicles_per_lane();
  const double free_length =
      per_lane > 0 ? road.length_m - static_cast<double>(per_lane - 1) * road.min_headway_m
                   : road.length_m;
  for (int lane = 0; lane < road.lanes; ++lane) {
    // Order statistics of uniform draws on the shortened road, spread by the
    // headway: uniform over all placements honouring the minimum gap.
    std::vector<double> xs(per_lane);
    for (auto& x : xs) x = unit_uniform(rng) * free_length;
    std::sort(xs.begin(), xs.end());
    const double y = (lane + 0.5) * road.lane_width_m;
    for (std::size_t n = 0; n < per_lane; ++n) {
      Vehicle v;
      v.position = {xs[n] + static_cast<double>(n) * road.min_headway_m, y};
      vehicles.push_back(v);
    }
  }
  for (auto& v : vehicles) {
    v.traffic_class = unit_uniform(rng) < sensitive_prob ? TrafficClass::DelaySensitive
                                                         : TrafficClass::DelayTolerant;
  }

  RoadConfig stored = road;
  stored.rng_seed = seed;
  return Scenario::from_parts(stored, sensitive_prob, channel, std::move(stations),
                              std::move(vehicles));
}

double channel_gain(const ChannelModel& model, const BaseStation& station,
                    const Vehicle& vehicle) {
  return model.gain(station.kind, distance(station.position, vehicle.position));
}

double LinearSinr::signal(std::span<const double> powers) const {
  double s = signal_const;
  for (std::size_t i = 0; i < signal_coef.size(); ++i) s += signal_coef[i] * powers[i];
  return s;
}

double LinearSinr::interference(std::span<const double> powers) const {
  double v = interference_const;
  for (std::size_t i = 0; i < interference_coef.size(); ++i) {
    v += interference_coef[i] * powers[i];
  }
  return v;
}

double LinearSinr::evaluate(std::span<const double> powers) const {
  return signal(powers) / interference(powers);
}

LinearSinr enb_link(const Scenario& s, std::size_t enb, std::size_t vehicle) {
  LinearSinr l;
  l.signal_coef.assign(s.ap_count(), 0.0);
  l.interference_coef.assign(s.ap_count(), 0.0);
  const auto& serving = s.enb(enb);
  l.signal_const = serving.tx_power_w * s.gain(enb, vehicle);
  l.interference_const = s.channel().noise_power_w;
  for (std::size_t j = 0; j < s.enb_count(); ++j) {
    if (j != enb && s.enb(j).group == serving.group) {
      l.interference_const += s.enb(j).tx_power_w * s.gain(j, vehicle);
    }
  }
  for (std::size_t i = 0; i < s.ap_count(); ++i) {
    if (s.ap(i).group != serving.group) {
      l.interference_coef[i] = s.gain(s.ap_station_index(i), vehicle);
    }
  }
  return l;
}

LinearSinr ap_link(const Scenario& s, std::size_t ap, std::size_t vehicle,
                   ApSlice slice) {
  LinearSinr l;
  l.signal_coef.assign(s.ap_count(), 0.0);
  l.interference_coef.assign(s.ap_count(), 0.0);
  l.signal_coef[ap] = s.gain(s.ap_station_index(ap), vehicle);
  l.interference_const = s.channel().noise_power_w;
  const EnbGroup own = s.ap(ap).group;
  for (std::size_t i = 0; i < s.ap_count(); ++i) {
    if (i == ap) continue;
    if (slice == ApSlice::WifiSlice || s.ap(i).group == own) {
      l.interference_coef[i] = s.gain(s.ap_station_index(i), vehicle);
    }
  }
  if (slice == ApSlice::OtherEnbSlice) {
    for (std::size_t j = 0; j < s.enb_count(); ++j) {
      if (s.enb(j).group != own) {
        l.interference_const += s.enb(j).tx_power_w * s.gain(j, vehicle);
      }
    }
  }
  return l;
}

double sinr_enb(const Scenario& s, std::size_t enb, std::size_t vehicle,
                std::span<const double> ap_powers) {
  return enb_link(s, enb, vehicle).evaluate(ap_powers);
}

double sinr_ap(const Scenario& s, std::size_t ap, std::size_t vehicle,
               std::span<const double> ap_powers, ApSlice slice) {
  return ap_link(s, ap, vehicle, slice).evaluate(ap_powers);
}

double spectrum_efficiency(double sinr) { return std::log2(1.0 + sinr); }

}  // namespace avslice
