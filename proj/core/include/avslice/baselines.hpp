#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "avslice/model.hpp"
#include "avslice/qos.hpp"
#include "avslice/scenario.hpp"
#include "avslice/solvers.hpp"

namespace avslice {

enum class Scheme { Proposed, MaxUtility, MaxSinr };

std::string_view to_string(Scheme s);
std::optional<Scheme> scheme_from_string(std::string_view name);
inline constexpr Scheme kAllSchemes[] = {Scheme::Proposed, Scheme::MaxUtility,
                                         Scheme::MaxSinr};

/// Outcome of one scheme on one scenario. Throughput is meaningful only when
/// `feasible` is set.
struct SchemeResult {
  Scheme scheme = Scheme::Proposed;
  bool feasible = false;
  /// False when rounding found no QoS-feasible binary association and the
  /// relaxed association is reported instead.
  bool binary = true;
  double throughput_bps = 0.0;
  std::size_t qos_violations = 0;
  int iterations = 0;
  SlicingRatios slicing;
  Association association;
  Allocation allocation;
  std::vector<double> powers;
  std::vector<double> rates;  // bit/s per vehicle
  AcsTrace trace;             // proposed scheme only
};

/// Joint slicing, association, allocation and power control.
SchemeResult run_proposed(const Scenario& s, const TrafficSpec& qos, double total_hz,
                          const AcsConfig& config);

/// Max-SINR association at fixed AP powers, slicing from the equal-share
/// utility, equal per-station shares.
SchemeResult run_max_sinr(const Scenario& s, const TrafficSpec& qos, double total_hz,
                          std::span<const double> ap_powers, const AcsConfig& config);

/// Alternates slicing with a utility-maximizing association at fixed AP
/// powers, then equal per-station shares.
SchemeResult run_max_utility(const Scenario& s, const TrafficSpec& qos, double total_hz,
                             std::span<const double> ap_powers, const AcsConfig& config);

/// Baselines run at the scenario's nominal AP powers.
SchemeResult run_scheme(Scheme scheme, const Scenario& s, const TrafficSpec& qos,
                        double total_hz, const AcsConfig& config);

}  // namespace avslice
