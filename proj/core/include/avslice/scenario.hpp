#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace avslice {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Straight multi-lane road on which vehicles are dropped.
struct RoadConfig {
  double length_m = 1200.0;
  int lanes = 2;
  double lane_width_m = 3.5;
  double min_headway_m = 5.0;
  double av_density_per_m = 0.05;  // per lane
  std::uint64_t rng_seed = 1;

  /// Vehicles placed on one lane: round(density * length).
  std::size_t vehicles_per_lane() const;
  /// Throws std::invalid_argument when the placement is infeasible.
  void validate() const;
};

enum class StationKind { Enb, WifiAp };
enum class EnbGroup { B1, B2 };
enum class TrafficClass { DelaySensitive, DelayTolerant };
enum class ApSlice { OtherEnbSlice, WifiSlice };

EnbGroup opposite(EnbGroup g);

struct BaseStation {
  std::size_t id = 0;  // index into Scenario::stations()
  StationKind kind = StationKind::Enb;
  EnbGroup group = EnbGroup::B1;  // parent's group for APs
  std::size_t parent_enb = kNone;  // station index of the parent eNB (APs only)
  Point position;
  double tx_power_w = 0.0;
  double coverage_radius_m = 0.0;
};

struct Vehicle {
  std::size_t id = 0;
  Point position;
  TrafficClass traffic_class = TrafficClass::DelayTolerant;
};

/// Deterministic log-distance path loss; distances are clamped to 1 m.
struct ChannelModel {
  double enb_intercept_db = -30.0;
  double ap_intercept_db = -40.0;
  double exponent = 3.5;
  double noise_power_w = dbm_to_watts(-104.0);

  double enb_pathloss_db(double d_m) const;
  double ap_pathloss_db(double d_m) const;
  double pathloss_db(StationKind kind, double d_m) const;
  double gain(StationKind kind, double d_m) const;
};

/// AP coverage radius as a function of transmit power: 200 m at 1 W,
/// 260 m at 2.5 W, linear in between (and beyond).
double ap_coverage_radius(double tx_power_w);

struct EnbSite {
  Point position;
  EnbGroup group = EnbGroup::B1;
};

struct ApSite {
  Point position;
  std::size_t parent = 0;  // index into Deployment::enbs
};

/// Station layout. Coverage sets are frozen from `ap_power_w` at build time.
struct Deployment {
  std::vector<EnbSite> enbs;
  std::vector<ApSite> aps;
  double enb_power_w = 10.0;
  double enb_radius_m = 600.0;
  double ap_power_w = 1.0;

  /// Two eNBs (one per group) at L/4 and 3L/4, four APs at L/8, 3L/8, 5L/8,
  /// 7L/8, all on one road side `station_offset_m` away from lane 0.
  static Deployment default_layout(double road_length_m, double ap_power_w,
                                   double station_offset_m = 10.0);
};

class Scenario {
 public:
  /// Assembles a scenario from explicit stations and vehicles. Stations must be
  /// ordered eNBs first, then APs. Derives gains and coverage sets.
  static Scenario from_parts(RoadConfig road, double sensitive_prob,
                             ChannelModel channel,
                             std::vector<BaseStation> stations,
                             std::vector<Vehicle> vehicles);

  const RoadConfig& road() const { return road_; }
  double sensitive_prob() const { return sensitive_prob_; }
  const ChannelModel& channel() const { return channel_; }
  std::span<const BaseStation> stations() const { return stations_; }
  std::span<const Vehicle> vehicles() const { return vehicles_; }

  std::size_t enb_count() const { return enb_count_; }
  std::size_t ap_count() const { return stations_.size() - enb_count_; }
  std::size_t vehicle_count() const { return vehicles_.size(); }

  const BaseStation& enb(std::size_t j) const { return stations_[j]; }
  const BaseStation& ap(std::size_t i) const { return stations_[enb_count_ + i]; }
  std::size_t ap_station_index(std::size_t i) const { return enb_count_ + i; }
  /// Index of an AP's parent eNB within [0, enb_count()).
  std::size_t ap_parent(std::size_t i) const { return ap(i).parent_enb; }

  /// Linear power gain between a station (by station index) and a vehicle.
  double gain(std::size_t station, std::size_t vehicle) const {
    return gains_[station * vehicles_.size() + vehicle];
  }

  /// eNB index whose cell (M_j) contains the vehicle.
  std::size_t serving_enb(std::size_t vehicle) const { return serving_enb_[vehicle]; }
  /// AP index covering the vehicle, or kNone.
  std::size_t covering_ap(std::size_t vehicle) const { return covering_ap_[vehicle]; }
  bool ap_covered(std::size_t vehicle) const { return covering_ap_[vehicle] != kNone; }

  const std::vector<std::size_t>& enb_members(std::size_t j) const { return enb_members_[j]; }
  const std::vector<std::size_t>& enb_only_members(std::size_t j) const {
    return enb_only_members_[j];
  }
  const std::vector<std::size_t>& ap_members(std::size_t i) const { return ap_members_[i]; }

  /// Nominal AP powers (the deployment power of every AP).
  std::vector<double> nominal_ap_powers() const;

 private:
  Scenario() = default;
  void derive();

  RoadConfig road_;
  double sensitive_prob_ = 0.0;
  ChannelModel channel_;
  std::vector<BaseStation> stations_;
  std::vector<Vehicle> vehicles_;
  std::size_t enb_count_ = 0;

  std::vector<double> gains_;
  std::vector<std::size_t> serving_enb_;
  std::vector<std::size_t> covering_ap_;
  std::vector<std::vector<std::size_t>> enb_members_;
  std::vector<std::vector<std::size_t>> enb_only_members_;
  std::vector<std::vector<std::size_t>> ap_members_;
};

/// Drops vehicles on the road and assembles the default-style scenario.
/// Throws std::invalid_argument on infeasible density or an AP whose coverage
/// disc leaves its parent eNB's disc.
Scenario build_scenario(const RoadConfig& road, const Deployment& deployment,
                        double sensitive_prob, std::uint64_t seed,
                        const ChannelModel& channel = {});

double channel_gain(const ChannelModel& model, const BaseStation& station,
                    const Vehicle& vehicle);

/// SINR of a downlink written as (s0 + a.P) / (i0 + b.P) in the AP powers P.
struct LinearSinr {
  double signal_const = 0.0;
  std::vector<double> signal_coef;
  double interference_const = 0.0;  // includes noise
  std::vector<double> interference_coef;

  double signal(std::span<const double> powers) const;
  double interference(std::span<const double> powers) const;
  double evaluate(std::span<const double> powers) const;
};

/// eNB j -> vehicle: interferers are same-group eNBs and every AP nested under
/// an eNB of the other group.
LinearSinr enb_link(const Scenario& s, std::size_t enb, std::size_t vehicle);

/// AP i -> vehicle. On the opposite eNB group's slice the interferers are the
/// other APs of the same group plus that group's eNBs; on the Wi-Fi slice
/// every other AP interferes.
LinearSinr ap_link(const Scenario& s, std::size_t ap, std::size_t vehicle,
                   ApSlice slice);

double sinr_enb(const Scenario& s, std::size_t enb, std::size_t vehicle,
                std::span<const double> ap_powers);
double sinr_ap(const Scenario& s, std::size_t ap, std::size_t vehicle,
               std::span<const double> ap_powers, ApSlice slice);

/// Spectrum efficiency log2(1 + sinr).
double spectrum_efficiency(double sinr);

}  // namespace avslice
