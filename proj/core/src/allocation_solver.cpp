#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "avslice/lp.hpp"
#include "avslice/solvers.hpp"

namespace avslice {

namespace {

// The linear programs work in MHz and Mbit/s to keep coefficients near 1.
constexpr double kMega = 1e6;
constexpr double kFloorSlack = 1e-9;

}  // namespace

std::optional<Allocation> solve_p2_allocation(const Scenario& s, const SlicingRatios& slicing,
                                              const Association& assoc,
                                              std::span<const double> ap_powers,
                                              const TrafficSpec& qos,
                                              double association_threshold) {
  return solve_p2_allocation(s, slicing, assoc, link_efficiencies(s, ap_powers),
                             rate_floors(s, qos), association_threshold);
}

std::optional<Allocation> solve_p2_allocation(const Scenario& s, const SlicingRatios& slicing,
                                              const Association& assoc,
                                              const LinkEfficiencies& eff,
                                              const std::vector<double>& floors,
                                              double association_threshold) {
  const std::size_t n = s.vehicle_count();
  const double total_mhz = slicing.total_hz / kMega;
  Allocation out = Allocation::zeros(n);

  // Pairs below the threshold carry no weight in the objective or the
  // budgets; they are quoted the smallest share that meets the floor so the
  // association step can still compare both sides.
  std::vector<bool> on_enb(n), on_ap(n);
  for (std::size_t k = 0; k < n; ++k) {
    on_enb[k] = assoc.x_enb[k] > association_threshold;
    on_ap[k] = s.ap_covered(k) && assoc.x_ap[k] > association_threshold;
    const double floor = floors[k] / kMega;
    if (!on_enb[k] && eff.enb[k] > 0.0) out.r_enb[k] = floor / eff.enb[k];
    if (s.ap_covered(k) && !on_ap[k]) {
      const EnbGroup reused = opposite(s.enb(s.serving_enb(k)).group);
      const double r_o = slicing.group_ratio(reused) > 0.0 ? eff.ap_other[k] : 0.0;
      const double r_w = slicing.beta_w > 0.0 ? eff.ap_wifi[k] : 0.0;
      if (r_w >= r_o && r_w > 0.0) {
        out.r_ap_wifi[k] = floor / r_w;
      } else if (r_o > 0.0) {
        out.r_ap_other[k] = floor / r_o;
      }
    }
  }

  lp::Problem prob;
  std::vector<std::size_t> var_enb(n, kNone), var_other(n, kNone), var_wifi(n, kNone);

  for (std::size_t j = 0; j < s.enb_count(); ++j) {
    std::vector<lp::Term> budget;
    double used_by_unassociated = 0.0;
    for (std::size_t k : s.enb_members(j)) {
      if (!on_enb[k]) {
        used_by_unassociated += assoc.x_enb[k] * out.r_enb[k];
        continue;
      }
      const double r = eff.enb[k];
      const double floor = floors[k] / kMega;
      if (!(r > 0.0)) {
        if (floor > 0.0) return std::nullopt;
        var_enb[k] = prob.add_variable(0.0, 0.0, 0.0);
      } else {
        var_enb[k] = prob.add_variable(assoc.x_enb[k] * r, floor / r);
      }
      budget.push_back({var_enb[k], assoc.x_enb[k]});
    }
    if (budget.empty()) continue;
    const double cap = slicing.group_ratio(s.enb(j).group) * total_mhz;
    prob.add_row(std::move(budget), lp::Sense::Equal, cap - used_by_unassociated);
  }

  for (std::size_t i = 0; i < s.ap_count(); ++i) {
    std::vector<lp::Term> other_budget, wifi_budget;
    double other_unassoc = 0.0, wifi_unassoc = 0.0;
    for (std::size_t k : s.ap_members(i)) {
      if (!on_ap[k]) {
        other_unassoc += assoc.x_ap[k] * out.r_ap_other[k];
        wifi_unassoc += assoc.x_ap[k] * out.r_ap_wifi[k];
        continue;
      }
      const double x = assoc.x_ap[k];
      var_other[k] = prob.add_variable(x * eff.ap_other[k]);
      var_wifi[k] = prob.add_variable(x * eff.ap_wifi[k]);
      other_budget.push_back({var_other[k], x});
      wifi_budget.push_back({var_wifi[k], x});
      const double floor = floors[k] / kMega;
      if (floor > 0.0) {
        prob.add_row({{var_other[k], eff.ap_other[k]}, {var_wifi[k], eff.ap_wifi[k]}},
                     lp::Sense::GreaterEqual, floor);
      }
    }
    if (other_budget.empty()) continue;
    const EnbGroup reused = opposite(s.enb(s.ap_parent(i)).group);
    prob.add_row(std::move(other_budget), lp::Sense::Equal,
                 slicing.group_ratio(reused) * total_mhz - other_unassoc);
    prob.add_row(std::move(wifi_budget), lp::Sense::Equal,
                 slicing.beta_w * total_mhz - wifi_unassoc);
  }

  if (prob.variable_count() > 0) {
    const auto res = lp::solve(prob);
    if (res.status != lp::Status::Optimal) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      if (var_enb[k] != kNone) out.r_enb[k] = res.x[var_enb[k]];
      if (var_other[k] != kNone) out.r_ap_other[k] = res.x[var_other[k]];
      if (var_wifi[k] != kNone) out.r_ap_wifi[k] = res.x[var_wifi[k]];
    }
  }
  for (auto* v : {&out.r_enb, &out.r_ap_other, &out.r_ap_wifi}) {
    for (auto& r : *v) r = std::max(0.0, r) * kMega;
  }
  return out;
}

std::optional<Association> solve_p2_association(const Scenario& s, const SlicingRatios& slicing,
                                                const Allocation& alloc,
                                                std::span<const double> ap_powers,
                                                const TrafficSpec& qos,
                                                const Association* current) {
  return solve_p2_association(s, slicing, alloc, link_efficiencies(s, ap_powers),
                              rate_floors(s, qos), current);
}

namespace {

// Floor-level spectrum bookkeeping per budget (eNB j -> j, AP i -> E + 2i for
// the reused eNB slice and E + 2i + 1 for the Wi-Fi slice).
struct BudgetState {
  std::vector<double> slack;  // capacity minus floor-level demand, Hz
  std::vector<double> best;   // highest efficiency among loaded links
};

BudgetState budget_state(const Scenario& s, const SlicingRatios& slicing,
                         const Allocation& alloc, const LinkEfficiencies& eff,
                         const std::vector<double>& floors, const Association& x) {
  const std::size_t e = s.enb_count();
  BudgetState st;
  st.slack.assign(e + 2 * s.ap_count(), 0.0);
  st.best.assign(st.slack.size(), 0.0);
  for (std::size_t j = 0; j < e; ++j) {
    st.slack[j] = slicing.group_ratio(s.enb(j).group) * slicing.total_hz;
  }
  for (std::size_t i = 0; i < s.ap_count(); ++i) {
    st.slack[e + 2 * i] =
        slicing.group_ratio(opposite(s.enb(s.ap_parent(i)).group)) * slicing.total_hz;
    st.slack[e + 2 * i + 1] = slicing.beta_w * slicing.total_hz;
  }
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    const auto rates = link_rates(alloc, eff, k);
    if (x.x_enb[k] > 0.0 && rates.enb > 0.0) {
      const std::size_t j = s.serving_enb(k);
      st.slack[j] -= x.x_enb[k] * alloc.r_enb[k] * floors[k] / rates.enb;
      if (alloc.r_enb[k] > 0.0) st.best[j] = std::max(st.best[j], eff.enb[k]);
    }
    if (s.ap_covered(k) && x.x_ap[k] > 0.0 && rates.ap > 0.0) {
      const std::size_t b = e + 2 * s.covering_ap(k);
      const double scale = x.x_ap[k] * floors[k] / rates.ap;
      st.slack[b] -= scale * alloc.r_ap_other[k];
      st.slack[b + 1] -= scale * alloc.r_ap_wifi[k];
      if (alloc.r_ap_other[k] > 0.0) st.best[b] = std::max(st.best[b], eff.ap_other[k]);
      if (alloc.r_ap_wifi[k] > 0.0) st.best[b + 1] = std::max(st.best[b + 1], eff.ap_wifi[k]);
    }
  }
  return st;
}

struct TieCandidate {
  std::size_t vehicle;
  double gain;        // spectrum value saved by moving, bit/s
  bool to_ap;
  std::size_t target;  // budget receiving the vehicle's floor demand
  std::size_t source;
  double target_hz;    // floor demand per unit of x on the target side
  double source_hz;
};

}  // namespace

std::optional<Association> solve_p2_association(const Scenario& s, const SlicingRatios& slicing,
                                                const Allocation& alloc,
                                                const LinkEfficiencies& eff,
                                                const std::vector<double>& floors,
                                                const Association* current) {
  const std::size_t n = s.vehicle_count();
  const std::size_t e = s.enb_count();
  Association out = Association::all_enb(s);
  lp::Problem prob;
  std::vector<std::size_t> var(n, kNone);
  std::vector<double> lower(n, 0.0), upper(n, 0.0), coef(n, 0.0);
  std::vector<bool> tied(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto rates = link_rates(alloc, eff, k);
    const double floor = floors[k] * (1.0 - kFloorSlack);
    const bool enb_ok = rates.enb >= floor;
    if (!s.ap_covered(k)) {
      if (!enb_ok) return std::nullopt;
      continue;
    }
    const bool ap_ok = rates.ap >= floor;
    if (!enb_ok && !ap_ok) return std::nullopt;
    lower[k] = enb_ok ? 0.0 : 1.0;
    upper[k] = ap_ok ? 1.0 : 0.0;
    coef[k] = (rates.ap - rates.enb) / kMega;
    const double scale = std::max({1.0, rates.ap / kMega, rates.enb / kMega});
    tied[k] = std::abs(coef[k]) <= 1e-12 * scale && lower[k] < upper[k];
  }

  // Exact ties (both sides at the floor) carry no throughput signal. Without
  // a current association they go to the AP; otherwise a vehicle moves to the
  // side whose floor costs less of the spectrum's best use, as long as the
  // receiving slice has floor-level room for it.
  if (current == nullptr) {
    for (std::size_t k = 0; k < n; ++k) {
      if (tied[k]) lower[k] = upper[k] = 1.0;
    }
  } else {
    auto st = budget_state(s, slicing, alloc, eff, floors, *current);
    std::vector<TieCandidate> moves;
    for (std::size_t k = 0; k < n; ++k) {
      if (!tied[k]) continue;
      lower[k] = upper[k] = current->x_ap[k];
      const double f = floors[k];
      const std::size_t j = s.serving_enb(k);
      const std::size_t b = e + 2 * s.covering_ap(k);
      const double enb_hz = eff.enb[k] > 0.0 ? f / eff.enb[k] : HUGE_VAL;
      const double other_hz = eff.ap_other[k] > 0.0 ? f / eff.ap_other[k] : HUGE_VAL;
      const double wifi_hz = eff.ap_wifi[k] > 0.0 ? f / eff.ap_wifi[k] : HUGE_VAL;
      const double enb_cost = enb_hz * st.best[j];
      const double other_cost = other_hz * st.best[b];
      const double wifi_cost = wifi_hz * st.best[b + 1];
      const bool use_wifi = wifi_cost < other_cost || (wifi_cost == other_cost && wifi_hz < other_hz);
      const std::size_t ap_budget = use_wifi ? b + 1 : b;
      const double ap_hz = use_wifi ? wifi_hz : other_hz;
      const double ap_cost = use_wifi ? wifi_cost : other_cost;
      const double margin = 1e-9 * std::max(enb_cost, ap_cost);
      if (ap_cost + margin < enb_cost && current->x_ap[k] < 1.0) {
        moves.push_back({k, enb_cost - ap_cost, true, ap_budget, j, ap_hz, enb_hz});
      } else if (enb_cost + margin < ap_cost && current->x_ap[k] > 0.0) {
        moves.push_back({k, ap_cost - enb_cost, false, j, ap_budget, enb_hz, ap_hz});
      }
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const TieCandidate& a, const TieCandidate& b) { return a.gain > b.gain; });
    for (const auto& m : moves) {
      const double delta = m.to_ap ? 1.0 - current->x_ap[m.vehicle] : current->x_ap[m.vehicle];
      const double need = delta * m.target_hz;
      if (!(need <= st.slack[m.target])) continue;
      st.slack[m.target] -= need;
      st.slack[m.source] += delta * m.source_hz;
      lower[m.vehicle] = upper[m.vehicle] = m.to_ap ? 1.0 : 0.0;
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (!s.ap_covered(k)) continue;
    var[k] = prob.add_variable(coef[k], lower[k], upper[k]);
  }
  if (prob.variable_count() > 0) {
    const auto res = lp::solve(prob);
    if (res.status != lp::Status::Optimal) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      if (var[k] == kNone) continue;
      const double y = std::clamp(res.x[var[k]], 0.0, 1.0);
      out.x_ap[k] = y;
      out.x_enb[k] = 1.0 - y;
    }
  }
  return out;
}

Association max_sinr_association(const Scenario& s, std::span<const double> ap_powers) {
  const auto xi = LinkTable(s).sinrs(ap_powers);
  std::vector<bool> to_ap(s.vehicle_count(), false);
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    to_ap[k] = s.ap_covered(k) && xi.c_ap_wifi[k] >= xi.c_enb[k];
  }
  return Association::from_choice(s, to_ap);
}

Association threshold_association(const Scenario& s, const Association& relaxed) {
  std::vector<bool> to_ap(s.vehicle_count(), false);
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) to_ap[k] = relaxed.x_ap[k] >= 0.5;
  return Association::from_choice(s, to_ap);
}

RoundingResult round_association(const Association& relaxed, const Scenario& s,
                                 const SlicingRatios& slicing,
                                 std::span<const double> ap_powers, const TrafficSpec& qos,
                                 int max_flips) {
  const auto eff = link_efficiencies(s, ap_powers);
  const auto floors = rate_floors(s, qos);
  RoundingResult out;
  out.association = threshold_association(s, relaxed);
  out.allocation = solve_p2_allocation(s, slicing, out.association, eff, floors);
  if (out.allocation) {
    out.feasible = true;
    return out;
  }

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    if (s.ap_covered(k)) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(relaxed.x_ap[a] - 0.5) < std::abs(relaxed.x_ap[b] - 0.5);
  });
  Association trial = out.association;
  const std::size_t limit = std::min<std::size_t>(order.size(), std::max(0, max_flips));
  for (std::size_t idx = 0; idx < limit; ++idx) {
    const std::size_t k = order[idx];
    std::swap(trial.x_enb[k], trial.x_ap[k]);
    auto alloc = solve_p2_allocation(s, slicing, trial, eff, floors);
    if (alloc) {
      out.association = trial;
      out.allocation = std::move(alloc);
      out.feasible = true;
      out.flips = static_cast<int>(idx + 1);
      return out;
    }
  }
  return out;
}

}  // namespace avslice
