#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avslice/model.hpp"
#include "avslice/qos.hpp"
#include "avslice/scenario.hpp"

namespace avslice {

/// Controls for the alternate concave search. Utility differences are
/// measured in Mbit/s.
struct AcsConfig {
  double kappa1 = 0.01;  // stop when |dU| <= kappa1
  double kappa2 = 20.0;  // switch to theta2 once |dU| <= kappa2
  double theta1 = 0.001;
  double theta2 = 0.1;
  int max_iters = 100;

  double p_max_w = 2.5;
  double initial_power_w = 1.0;

  double p1_tol = 1e-8;
  int p1_max_iters = 10000;
  int p3_max_rounds = 50;
  double p3_power_tol = 1e-6;
  /// Association weights at or below this are treated as "not associated"
  /// when building the per-block linear programs.
  double association_threshold = 1e-6;

  /// Throws std::invalid_argument unless kappa2 > kappa1 > 0 and both thetas
  /// lie in (0, 1].
  void validate() const;
};

// --- spectrum slicing -------------------------------------------------------

struct P1Result {
  SlicingRatios slicing;
  double utility = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// Maximizes the equal-share log utility over the slicing simplex by projected
/// gradient ascent with Armijo backtracking.
P1Result solve_p1(const Scenario& s, const Association& assoc,
                  std::span<const double> ap_powers, double total_hz, double tol = 1e-8,
                  int max_iters = 10000);
P1Result solve_p1(const Scenario& s, const Association& assoc, const LinkEfficiencies& eff,
                  double total_hz, double tol = 1e-8, int max_iters = 10000);

/// Euclidean projection onto {b >= 0, sum b = 1}.
std::array<double, 3> project_to_simplex(const std::array<double, 3>& v);

// --- throughput maximization blocks ----------------------------------------

/// Throughput-optimal spectrum allocation for a fixed association (a linear
/// program). Returns nullopt when the QoS floors cannot be met inside the
/// slices.
std::optional<Allocation> solve_p2_allocation(const Scenario& s, const SlicingRatios& slicing,
                                              const Association& assoc,
                                              std::span<const double> ap_powers,
                                              const TrafficSpec& qos,
                                              double association_threshold = 1e-6);
std::optional<Allocation> solve_p2_allocation(const Scenario& s, const SlicingRatios& slicing,
                                              const Association& assoc,
                                              const LinkEfficiencies& eff,
                                              const std::vector<double>& floors,
                                              double association_threshold = 1e-6);

/// Throughput-optimal association for a fixed allocation. Vehicles whose two
/// sides deliver exactly the same rate move, given `current`, toward the side
/// where their floor costs less spectrum value, if that slice has room;
/// without `current` they go to the AP.
std::optional<Association> solve_p2_association(const Scenario& s, const SlicingRatios& slicing,
                                                const Allocation& alloc,
                                                std::span<const double> ap_powers,
                                                const TrafficSpec& qos,
                                                const Association* current = nullptr);
std::optional<Association> solve_p2_association(const Scenario& s, const SlicingRatios& slicing,
                                                const Allocation& alloc,
                                                const LinkEfficiencies& eff,
                                                const std::vector<double>& floors,
                                                const Association* current = nullptr);

// --- power control ----------------------------------------------------------

struct P3Options {
  double p_max_w = 2.5;
  int max_rounds = 50;
  double power_tol = 1e-6;
  double association_threshold = 1e-6;
};

struct P3Result {
  PowerAndSinr solution;   // p_ap and C = received SINR at p_ap
  double objective = 0.0;  // throughput at the returned powers, bit/s
  int rounds = 0;
  bool initial_feasible = true;
};

/// Alternates the closed-form SINR step (C set to the received SINRs) with a
/// linear program over the AP powers that maximizes the rate-weighted SINR
/// slack, keeping every loaded slice able to carry its vehicles' QoS floors.
P3Result solve_p3(const Scenario& s, const SlicingRatios& slicing, const Association& assoc,
                  const Allocation& alloc, const TrafficSpec& qos,
                  std::span<const double> powers_init, const P3Options& options = {});

// --- association helpers ----------------------------------------------------

/// Each covered vehicle joins whichever of its eNB and AP (Wi-Fi slice)
/// delivers the higher SINR; ties go to the AP.
Association max_sinr_association(const Scenario& s, std::span<const double> ap_powers);

/// x_ap >= 0.5 -> AP, else eNB.
Association threshold_association(const Scenario& s, const Association& relaxed);

struct RoundingResult {
  Association association;
  std::optional<Allocation> allocation;
  bool feasible = false;
  int flips = 0;
};

/// Thresholds a relaxed association and re-solves the allocation. If the
/// binary pattern is QoS-infeasible, vehicles closest to the threshold are
/// flipped one at a time until the allocation becomes feasible.
RoundingResult round_association(const Association& relaxed, const Scenario& s,
                                 const SlicingRatios& slicing,
                                 std::span<const double> ap_powers, const TrafficSpec& qos,
                                 int max_flips = 32);

// --- alternate concave search ----------------------------------------------

struct AcsInit {
  std::optional<Association> association;  // default: max-SINR at the initial powers
  std::optional<std::vector<double>> powers;  // default: initial_power_w per AP
};

struct AcsRecord {
  int iteration = 0;
  double utility_mbps = 0.0;
  double delta_mbps = 0.0;
  double theta = 1.0;
  SlicingRatios slicing;
  std::vector<double> powers;
  bool feasible = true;
};

struct AcsTrace {
  std::vector<AcsRecord> records;

  /// iteration,utility_mbps,delta_mbps,theta,beta1,beta2,beta_w,p_ap1..p_apN
  std::string to_csv() const;
};

enum class AcsStatus { Converged, IterationLimit, NoSolution };

std::string_view to_string(AcsStatus s);

struct AcsSolution {
  SlicingRatios slicing;
  Association association;
  Allocation allocation;
  std::vector<double> powers;
};

struct AcsOutcome {
  AcsStatus status = AcsStatus::NoSolution;
  AcsSolution solution;
  /// Last undamped slicing produced by the slicing step.
  SlicingRatios last_slicing_step;
  AcsTrace trace;
  int iterations = 0;
  int reinitializations = 0;
};

AcsOutcome run_acs(const Scenario& s, const TrafficSpec& qos, double total_hz,
                   const AcsConfig& config, const AcsInit& init = {});

}  // namespace avslice
