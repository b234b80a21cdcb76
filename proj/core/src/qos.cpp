#include "avslice/qos.hpp"

#include <cmath>
#include <stdexcept>

namespace avslice {

void TrafficSpec::validate() const {
  if (!(sensitive_packet_bits > 0.0) || !(sensitive_arrival_per_s > 0.0) ||
      !(max_delay_s > 0.0)) {
    throw std::invalid_argument("delay-sensitive traffic parameters must be positive");
  }
  if (!(violation_prob > 0.0 && violation_prob < 1.0)) {
    throw std::invalid_argument("delay violation probability must lie in (0, 1)");
  }
  if (!(tolerant_packet_bits >= 0.0) || !(tolerant_arrival_per_s >= 0.0)) {
    throw std::invalid_argument("delay-tolerant traffic parameters must be non-negative");
  }
}

double min_rate_sensitive(const TrafficSpec& spec) {
  spec.validate();
  const double log_rho = std::log(spec.violation_prob);
  const double load = spec.sensitive_arrival_per_s * spec.max_delay_s;
  return -spec.sensitive_packet_bits * log_rho /
         (spec.max_delay_s * std::log(1.0 - log_rho / load));
}

double min_rate_tolerant(const TrafficSpec& spec) {
  return spec.tolerant_arrival_per_s * spec.tolerant_packet_bits;
}

double min_rate(const TrafficSpec& spec, TrafficClass cls) {
  return cls == TrafficClass::DelaySensitive ? min_rate_sensitive(spec)
                                             : min_rate_tolerant(spec);
}

std::vector<double> rate_floors(const Scenario& scenario, const TrafficSpec& spec) {
  const double sensitive = min_rate_sensitive(spec);
  const double tolerant = min_rate_tolerant(spec);
  std::vector<double> floors;
  floors.reserve(scenario.vehicle_count());
  for (const auto& v : scenario.vehicles()) {
    floors.push_back(v.traffic_class == TrafficClass::DelaySensitive ? sensitive : tolerant);
  }
  return floors;
}

}  // namespace avslice
