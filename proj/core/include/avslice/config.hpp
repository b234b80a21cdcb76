#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "avslice/baselines.hpp"
#include "avslice/qos.hpp"
#include "avslice/scenario.hpp"
#include "avslice/solvers.hpp"

namespace avslice {

/// Malformed, unknown or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to build one scenario and run the schemes on it.
struct SimulationConfig {
  RoadConfig road;
  double sensitive_prob = 0.8;
  double aggregate_spectrum_hz = 20e6;
  /// Deployment AP power: fixes coverage radii and the baselines' powers.
  double ap_power_w = 2.5;
  double enb_power_w = 10.0;
  double enb_radius_m = 600.0;
  double station_offset_m = 10.0;
  ChannelModel channel;
  TrafficSpec traffic;
  AcsConfig acs;
  std::vector<Scheme> schemes{Scheme::Proposed, Scheme::MaxUtility, Scheme::MaxSinr};

  /// Throws ConfigError.
  void validate() const;
  Deployment deployment() const;
  Scenario build_scenario() const;
};

/// Parses a JSON document; every key is optional and overrides the default.
/// Unknown keys are rejected.
SimulationConfig parse_config(std::string_view json_text);
SimulationConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const SimulationConfig& config);

}  // namespace avslice
