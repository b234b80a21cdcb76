#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "avslice/lp.hpp"
#include "avslice/solvers.hpp"

namespace avslice {

namespace {

struct PowerLink {
  const LinearSinr* sinr;
  double weight;      // x * R, Hz
  std::size_t budget;
  double demand_num;  // x * floor share, bit/s; 0 if the link carries no floor
};

struct Evaluation {
  double utility = 0.0;
  std::vector<double> demand;  // Hz per budget
};

class PowerProblem {
 public:
  PowerProblem(const Scenario& s, const LinkTable& table, const SlicingRatios& slicing,
               const Association& assoc, const Allocation& alloc,
               const std::vector<double>& floors, std::span<const double> p_ref,
               double threshold)
      : aps_(s.ap_count()) {
    const std::size_t e = s.enb_count();
    cap_.assign(e + 2 * s.ap_count(), 0.0);
    for (std::size_t j = 0; j < e; ++j) {
      cap_[j] = slicing.group_ratio(s.enb(j).group) * slicing.total_hz;
    }
    for (std::size_t i = 0; i < s.ap_count(); ++i) {
      const EnbGroup reused = opposite(s.enb(s.ap_parent(i)).group);
      cap_[e + 2 * i] = slicing.group_ratio(reused) * slicing.total_hz;
      cap_[e + 2 * i + 1] = slicing.beta_w * slicing.total_hz;
    }

    const auto eff = table.efficiencies(p_ref);
    for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
      if (assoc.x_enb[k] > threshold) {
        links_.push_back({&table.enb(k), assoc.x_enb[k] * alloc.r_enb[k], s.serving_enb(k),
                          assoc.x_enb[k] * floors[k]});
      }
      if (!s.ap_covered(k) || assoc.x_ap[k] <= threshold) continue;
      const std::size_t i = s.covering_ap(k);
      // Each AP link keeps the part of the floor it carries at the reference powers.
      const double ro = alloc.r_ap_other[k] * eff.ap_other[k];
      const double rw = alloc.r_ap_wifi[k] * eff.ap_wifi[k];
      const double total = ro + rw;
      const double share_o = total > 0.0 ? ro / total : 0.0;
      const double x = assoc.x_ap[k];
      if (alloc.r_ap_other[k] > 0.0 || share_o > 0.0) {
        links_.push_back({&table.ap_other(k), x * alloc.r_ap_other[k], e + 2 * i,
                          x * floors[k] * share_o});
      }
      if (alloc.r_ap_wifi[k] > 0.0 || share_o < 1.0) {
        links_.push_back({&table.ap_wifi(k), x * alloc.r_ap_wifi[k], e + 2 * i + 1,
                          x * floors[k] * (1.0 - share_o)});
      }
    }
  }

  std::size_t budgets() const { return cap_.size(); }
  double cap(std::size_t b) const { return cap_[b]; }

  Evaluation evaluate(std::span<const double> p) const {
    Evaluation ev;
    ev.demand.assign(cap_.size(), 0.0);
    for (const auto& l : links_) {
      const double r = spectrum_efficiency(l.sinr->evaluate(p));
      ev.utility += l.weight * r;
      if (l.demand_num > 0.0) {
        ev.demand[l.budget] += r > 0.0 ? l.demand_num / r : HUGE_VAL;
      }
    }
    return ev;
  }

  bool within_caps(const Evaluation& ev) const {
    for (std::size_t b = 0; b < cap_.size(); ++b) {
      if (ev.demand[b] > cap_[b] * (1.0 + 1e-12)) return false;
    }
    return true;
  }

  // Gradients of the utility and of every budget's floor demand at p.
  void gradients(std::span<const double> p, std::vector<double>& g_util,
                 std::vector<std::vector<double>>& g_demand) const {
    g_util.assign(aps_, 0.0);
    g_demand.assign(cap_.size(), std::vector<double>(aps_, 0.0));
    for (const auto& l : links_) {
      const double interference = l.sinr->interference(p);
      const double xi = l.sinr->signal(p) / interference;
      const double r = spectrum_efficiency(xi);
      const double d_rate = 1.0 / ((1.0 + xi) * std::numbers::ln2 * interference);
      for (std::size_t i = 0; i < aps_; ++i) {
        const double d_xi = l.sinr->signal_coef[i] - xi * l.sinr->interference_coef[i];
        if (d_xi == 0.0) continue;
        g_util[i] += l.weight * d_rate * d_xi;
        if (l.demand_num > 0.0 && r > 0.0) {
          g_demand[l.budget][i] -= l.demand_num / (r * r) * d_rate * d_xi;
        }
      }
    }
  }

 private:
  std::size_t aps_;
  std::vector<double> cap_;
  std::vector<PowerLink> links_;
};

}  // namespace

P3Result solve_p3(const Scenario& s, const SlicingRatios& slicing, const Association& assoc,
                  const Allocation& alloc, const TrafficSpec& qos,
                  std::span<const double> powers_init, const P3Options& options) {
  const LinkTable table(s);
  const std::size_t n_ap = s.ap_count();
  std::vector<double> p(powers_init.begin(), powers_init.end());
  for (auto& v : p) v = std::clamp(v, 0.0, options.p_max_w);

  const PowerProblem problem(s, table, slicing, assoc, alloc, rate_floors(s, qos), p,
                             options.association_threshold);
  P3Result result;
  Evaluation current = problem.evaluate(p);
  result.initial_feasible = problem.within_caps(current);

  double radius = options.p_max_w;
  std::vector<double> g_util;
  std::vector<std::vector<double>> g_demand;
  while (n_ap > 0 && result.initial_feasible && result.rounds < options.max_rounds) {
    ++result.rounds;
    problem.gradients(p, g_util, g_demand);
    double g_scale = 0.0;
    for (double g : g_util) g_scale = std::max(g_scale, std::abs(g));
    if (!(g_scale > 0.0)) break;
    lp::Problem prob;
    for (std::size_t i = 0; i < n_ap; ++i) {
      const double lo = std::max(0.0, p[i] - radius);
      const double hi = std::min(options.p_max_w, p[i] + radius);
      prob.add_variable(g_util[i] / g_scale, lo, hi);
    }
    for (std::size_t b = 0; b < problem.budgets(); ++b) {
      if (current.demand[b] <= 0.0) continue;
      const double cap = problem.cap(b);
      std::vector<lp::Term> row;
      double rhs = cap - current.demand[b];
      for (std::size_t i = 0; i < n_ap; ++i) {
        if (g_demand[b][i] == 0.0) continue;
        row.push_back({i, g_demand[b][i] / cap});
        rhs += g_demand[b][i] * p[i];
      }
      if (row.empty()) continue;
      prob.add_row(std::move(row), lp::Sense::LessEqual, rhs / cap);
    }
    const auto lp_res = lp::solve(prob);
    if (lp_res.status != lp::Status::Optimal) break;

    bool accepted = false;
    std::vector<double> trial(n_ap);
    double moved = 0.0;
    for (double tau = 1.0; tau >= 1.0 / 64.0; tau *= 0.5) {
      moved = 0.0;
      for (std::size_t i = 0; i < n_ap; ++i) {
        trial[i] = std::clamp(p[i] + tau * (lp_res.x[i] - p[i]), 0.0, options.p_max_w);
        moved = std::max(moved, std::abs(trial[i] - p[i]));
      }
      if (moved == 0.0) break;
      const Evaluation ev = problem.evaluate(trial);
      if (problem.within_caps(ev) &&
          ev.utility > current.utility + 1e-12 * std::abs(current.utility)) {
        p = trial;
        current = ev;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      radius *= 0.25;
      if (radius < options.power_tol) break;
      continue;
    }
    if (moved < options.power_tol) break;
  }

  result.solution = table.sinrs(p);
  result.objective = current.utility;
  return result;
}

}  // namespace avslice
