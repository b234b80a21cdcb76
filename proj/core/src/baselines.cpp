#include "avslice/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "avslice/lp.hpp"

namespace avslice {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::MaxUtility: return "max_utility";
    case Scheme::MaxSinr: return "max_sinr";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

constexpr double kFloorSlack = 1e-9;

// Rates, throughput and the QoS verdict of a fixed operating point.
void finish(SchemeResult& r, const Scenario& s, const TrafficSpec& qos) {
  const auto eff = link_efficiencies(s, r.powers);
  const auto floors = rate_floors(s, qos);
  r.rates = vehicle_rates(r.association, r.allocation, eff);
  r.qos_violations = 0;
  r.throughput_bps = 0.0;
  for (std::size_t k = 0; k < r.rates.size(); ++k) {
    r.throughput_bps += r.rates[k];
    if (r.rates[k] < floors[k] * (1.0 - kFloorSlack)) ++r.qos_violations;
  }
}

SchemeResult equal_share_result(Scheme scheme, const Scenario& s, const TrafficSpec& qos,
                                double total_hz, std::span<const double> ap_powers,
                                const Association& assoc, const AcsConfig& config) {
  SchemeResult r;
  r.scheme = scheme;
  r.association = assoc;
  r.powers.assign(ap_powers.begin(), ap_powers.end());
  r.slicing =
      solve_p1(s, assoc, ap_powers, total_hz, config.p1_tol, config.p1_max_iters).slicing;
  r.allocation = equal_allocation(s, r.slicing, assoc);
  finish(r, s, qos);
  r.feasible = r.qos_violations == 0;
  return r;
}

}  // namespace

SchemeResult run_max_sinr(const Scenario& s, const TrafficSpec& qos, double total_hz,
                          std::span<const double> ap_powers, const AcsConfig& config) {
  auto r = equal_share_result(Scheme::MaxSinr, s, qos, total_hz, ap_powers,
                              max_sinr_association(s, ap_powers), config);
  r.iterations = 1;
  return r;
}

SchemeResult run_max_utility(const Scenario& s, const TrafficSpec& qos, double total_hz,
                             std::span<const double> ap_powers, const AcsConfig& config) {
  const auto eff = link_efficiencies(s, ap_powers);
  Association x = max_sinr_association(s, ap_powers);
  SlicingRatios beta;
  bool have_beta = false;
  double u_prev = 0.0;
  double du_prev = HUGE_VAL;
  int t = 1;
  for (; t <= config.max_iters; ++t) {
    const auto beta_step =
        solve_p1(s, x, eff, total_hz, config.p1_tol, config.p1_max_iters).slicing;
    const auto loads = effective_loads(s, x);

    // Per-vehicle equal-share rates at the current loads; a vehicle that is
    // not yet counted on a station is treated as its only user.
    lp::Problem prob;
    std::vector<std::size_t> var(s.vehicle_count(), kNone);
    for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
      if (!s.ap_covered(k)) continue;
      const std::size_t j = s.serving_enb(k);
      const std::size_t i = s.covering_ap(k);
      const EnbGroup g = s.enb(j).group;
      const double rate_enb =
          beta_step.group_ratio(g) * total_hz * eff.enb[k] / std::max(1.0, loads.m_resid[j]);
      const double rate_ap = (beta_step.group_ratio(opposite(g)) * eff.ap_other[k] +
                              beta_step.beta_w * eff.ap_wifi[k]) *
                             total_hz / std::max(1.0, loads.n_prime[i]);
      const double gain = (rate_enb > 0.0 && rate_ap > 0.0)
                              ? std::log(rate_ap) - std::log(rate_enb)
                              : (rate_ap > 0.0 ? 1.0 : -1.0);
      var[k] = prob.add_variable(gain != 0.0 ? gain : 1e-9, 0.0, 1.0);
    }
    Association x_step = x;
    if (prob.variable_count() > 0) {
      const auto res = lp::solve(prob);
      if (res.status == lp::Status::Optimal) {
        for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
          if (var[k] == kNone) continue;
          x_step.x_ap[k] = std::clamp(res.x[var[k]], 0.0, 1.0);
          x_step.x_enb[k] = 1.0 - x_step.x_ap[k];
        }
      }
    }

    const double theta = std::abs(du_prev) <= config.kappa2 ? config.theta2 : config.theta1;
    if (!have_beta) {
      beta = beta_step;
      have_beta = true;
    } else {
      auto b = beta.as_array();
      const auto bn = beta_step.as_array();
      for (int i = 0; i < 3; ++i) b[i] += theta * (bn[i] - b[i]);
      beta = SlicingRatios::from_array(b, total_hz);
    }
    for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
      x.x_ap[k] += theta * (x_step.x_ap[k] - x.x_ap[k]);
      x.x_enb[k] = 1.0 - x.x_ap[k];
    }
    const double u = utility_p1(s, beta, x, eff);
    const double du = u - u_prev;
    if (t > 1 && std::abs(du) <= config.kappa1) break;
    u_prev = u;
    du_prev = du;
  }

  auto r = equal_share_result(Scheme::MaxUtility, s, qos, total_hz, ap_powers,
                              threshold_association(s, x), config);
  r.iterations = std::min(t, config.max_iters);
  return r;
}

SchemeResult run_proposed(const Scenario& s, const TrafficSpec& qos, double total_hz,
                          const AcsConfig& config) {
  SchemeResult r;
  r.scheme = Scheme::Proposed;
  const auto acs = run_acs(s, qos, total_hz, config);
  r.iterations = acs.iterations;
  r.trace = acs.trace;
  r.powers = acs.solution.powers;
  if (acs.status == AcsStatus::NoSolution) {
    r.feasible = false;
    r.slicing = acs.last_slicing_step;
    r.association = acs.solution.association;
    r.allocation = Allocation::zeros(s.vehicle_count());
    return r;
  }

  for (const SlicingRatios& beta : {acs.solution.slicing, acs.last_slicing_step}) {
    auto rounded = round_association(acs.solution.association, s, beta, r.powers, qos);
    if (rounded.feasible) {
      r.slicing = beta;
      r.association = rounded.association;
      r.allocation = *rounded.allocation;
      finish(r, s, qos);
      r.feasible = r.qos_violations == 0;
      return r;
    }
  }
  r.binary = false;
  r.slicing = acs.solution.slicing;
  r.association = acs.solution.association;
  r.allocation = acs.solution.allocation;
  finish(r, s, qos);
  r.feasible = true;
  return r;
}

SchemeResult run_scheme(Scheme scheme, const Scenario& s, const TrafficSpec& qos,
                        double total_hz, const AcsConfig& config) {
  const auto powers = s.nominal_ap_powers();
  switch (scheme) {
    case Scheme::Proposed: return run_proposed(s, qos, total_hz, config);
    case Scheme::MaxUtility: return run_max_utility(s, qos, total_hz, powers, config);
    case Scheme::MaxSinr: return run_max_sinr(s, qos, total_hz, powers, config);
  }
  return {};
}

}  // namespace avslice
