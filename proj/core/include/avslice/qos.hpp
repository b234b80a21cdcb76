#pragma once

#include <vector>

#include "avslice/scenario.hpp"

namespace avslice {

/// Packet-level traffic description for the two request classes.
struct TrafficSpec {
  double sensitive_packet_bits = 1048.0;
  double sensitive_arrival_per_s = 4.0;
  double max_delay_s = 0.01;
  double violation_prob = 1e-3;
  double tolerant_packet_bits = 9000.0;
  double tolerant_arrival_per_s = 20.0;

  /// Throws std::invalid_argument on non-positive sizes/rates or a violation
  /// probability outside (0, 1).
  void validate() const;
};

/// Minimum rate keeping P(delay > D_max) <= violation_prob under the
/// effective-bandwidth bound (natural logarithms), bit/s.
double min_rate_sensitive(const TrafficSpec& spec);

/// Periodic traffic: arrival rate times packet size, bit/s.
double min_rate_tolerant(const TrafficSpec& spec);

double min_rate(const TrafficSpec& spec, TrafficClass cls);

/// Per-vehicle rate floor in bit/s.
std::vector<double> rate_floors(const Scenario& scenario, const TrafficSpec& spec);

}  // namespace avslice
