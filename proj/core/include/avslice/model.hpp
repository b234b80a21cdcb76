#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "avslice/qos.hpp"
#include "avslice/scenario.hpp"

namespace avslice {

/// Fractions of the aggregate spectrum given to eNB group 1, eNB group 2 and
/// the Wi-Fi slice, plus the aggregate itself in Hz.
struct SlicingRatios {
  double beta1 = 1.0 / 3.0;
  double beta2 = 1.0 / 3.0;
  double beta_w = 1.0 / 3.0;
  double total_hz = 20e6;

  static SlicingRatios uniform(double total_hz);
  static SlicingRatios from_array(const std::array<double, 3>& b, double total_hz);
  std::array<double, 3> as_array() const { return {beta1, beta2, beta_w}; }

  /// Ratio of the slice owned by an eNB group.
  double group_ratio(EnbGroup g) const { return g == EnbGroup::B1 ? beta1 : beta2; }
  bool on_simplex(double tol = 1e-9) const;
};

/// Relaxed association, stored per vehicle: each vehicle has exactly one
/// candidate eNB (its cell) and at most one candidate AP.
struct Association {
  std::vector<double> x_enb;
  std::vector<double> x_ap;  // 0 for vehicles outside AP coverage

  /// Every vehicle on its eNB.
  static Association all_enb(const Scenario& s);
  /// Binary pattern; `to_ap[k]` is ignored for vehicles without AP coverage.
  static Association from_choice(const Scenario& s, const std::vector<bool>& to_ap);

  bool is_binary(double tol = 0.0) const;
};

/// Spectrum in Hz per vehicle from its eNB and, for AP-covered vehicles, from
/// the AP's two reusable slices.
struct Allocation {
  std::vector<double> r_enb;
  std::vector<double> r_ap_other;
  std::vector<double> r_ap_wifi;

  static Allocation zeros(std::size_t vehicles);
};

/// AP powers and the auxiliary SINR variables that stand in for the received
/// SINRs in the power-control problem.
struct PowerAndSinr {
  std::vector<double> p_ap;
  std::vector<double> c_enb;
  std::vector<double> c_ap_other;
  std::vector<double> c_ap_wifi;
};

struct EffectiveLoads {
  std::vector<double> n_prime;  // per AP: sum of x_ap
  std::vector<double> m_resid;  // per eNB: sum of x_enb over its cell
};

EffectiveLoads effective_loads(const Scenario& s, const Association& a);

/// Spectrum efficiency (bit/s/Hz) of every vehicle's candidate links.
struct LinkEfficiencies {
  std::vector<double> enb;
  std::vector<double> ap_other;
  std::vector<double> ap_wifi;

  /// Uniform scaling, used by invariance checks.
  LinkEfficiencies scaled(double factor) const;
};

/// Per-vehicle linear SINR forms, built once per scenario.
class LinkTable {
 public:
  explicit LinkTable(const Scenario& s);

  const LinearSinr& enb(std::size_t k) const { return enb_[k]; }
  const LinearSinr& ap_other(std::size_t k) const { return ap_other_[k]; }
  const LinearSinr& ap_wifi(std::size_t k) const { return ap_wifi_[k]; }

  LinkEfficiencies efficiencies(std::span<const double> ap_powers) const;
  /// Received SINRs; AP entries are 0 for vehicles without AP coverage.
  PowerAndSinr sinrs(std::span<const double> ap_powers) const;

 private:
  std::vector<LinearSinr> enb_;
  std::vector<LinearSinr> ap_other_;
  std::vector<LinearSinr> ap_wifi_;
  std::vector<bool> covered_;
};

LinkEfficiencies link_efficiencies(const Scenario& s, std::span<const double> ap_powers);
/// Efficiencies log2(1 + C) implied by auxiliary SINR variables.
LinkEfficiencies efficiencies_from_sinr(const PowerAndSinr& aux);

/// Rates of a vehicle's eNB link and AP link under an allocation.
struct LinkRates {
  double enb = 0.0;
  double ap = 0.0;
};
LinkRates link_rates(const Allocation& alloc, const LinkEfficiencies& eff, std::size_t k);

/// Association-weighted achieved rate of one vehicle, bit/s.
double rate_of_vehicle(const Scenario& s, const Association& assoc, const Allocation& alloc,
                       std::span<const double> ap_powers, std::size_t vehicle);
std::vector<double> vehicle_rates(const Association& assoc, const Allocation& alloc,
                                  const LinkEfficiencies& eff);

/// Aggregate log-utility with each station's spectrum shared equally among
/// its (effective) load. Returns -inf if an associated vehicle's utility
/// argument is not positive.
double utility_p1(const Scenario& s, const SlicingRatios& slicing, const Association& assoc,
                  std::span<const double> ap_powers);
double utility_p1(const Scenario& s, const SlicingRatios& slicing, const Association& assoc,
                  const LinkEfficiencies& eff);

/// Equal per-vehicle shares of each station's slice. Vehicles not associated
/// to a side, and stations with zero effective load, receive zero.
Allocation equal_allocation(const Scenario& s, const SlicingRatios& slicing,
                            const Association& assoc);

/// Network throughput sum of x * rate over every candidate link, bit/s.
double throughput_objective(const Scenario& s, const Association& assoc,
                            const Allocation& alloc, std::span<const double> ap_powers);
double throughput_objective(const Association& assoc, const Allocation& alloc,
                            const LinkEfficiencies& eff);

/// Throughput with log2(1 + C) in place of the received spectrum efficiencies.
double p3_objective(const Scenario& s, const Association& assoc, const Allocation& alloc,
                    const PowerAndSinr& sinr_aux);

enum class ConstraintFamily {
  Budget,
  Nonnegativity,
  AssociationBox,
  Coupling,
  SensitiveQos,
  TolerantQos,
  PowerBox,
  SinrAux,
};

std::string_view to_string(ConstraintFamily f);

struct ConstraintResidual {
  ConstraintFamily family;
  std::size_t index;  // vehicle, AP or budget index depending on the family
  double value;       // normalized; >= 0 means satisfied
};

/// Signed, normalized residuals of every constraint of the relaxed throughput
/// and power-control problems.
struct ResidualReport {
  std::vector<ConstraintResidual> entries;

  double worst(ConstraintFamily f) const;  // +inf when the family is empty
  double worst() const;
  bool feasible(double tol = 1e-6) const { return worst() >= -tol; }
};

ResidualReport constraint_residuals(const Scenario& s, const SlicingRatios& slicing,
                                    const Association& assoc, const Allocation& alloc,
                                    const PowerAndSinr& powers, const TrafficSpec& qos,
                                    double p_max_w);

}  // namespace avslice
