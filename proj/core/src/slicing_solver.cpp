#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "avslice/solvers.hpp"

namespace avslice {

namespace {

// One term w * log(a . beta) of the slicing utility; constants dropped.
struct LogTerm {
  double weight;
  std::array<double, 3> coef;
};

std::size_t group_slot(EnbGroup g) { return g == EnbGroup::B1 ? 0 : 1; }

std::vector<LogTerm> build_terms(const Scenario& s, const Association& assoc,
                                 const LinkEfficiencies& eff) {
  std::vector<LogTerm> terms;
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    const EnbGroup g = s.enb(s.serving_enb(k)).group;
    if (assoc.x_enb[k] > 0.0) {
      LogTerm t{assoc.x_enb[k], {0.0, 0.0, 0.0}};
      t.coef[group_slot(g)] = 1.0;
      terms.push_back(t);
    }
    if (s.ap_covered(k) && assoc.x_ap[k] > 0.0) {
      const double ro = eff.ap_other[k];
      const double rw = eff.ap_wifi[k];
      const double scale = std::max(ro, rw);
      if (!(scale > 0.0)) continue;
      LogTerm t{assoc.x_ap[k], {0.0, 0.0, 0.0}};
      t.coef[group_slot(opposite(g))] = ro / scale;
      t.coef[2] = rw / scale;
      terms.push_back(t);
    }
  }
  return terms;
}

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double value(const std::vector<LogTerm>& terms, const std::array<double, 3>& b) {
  double v = 0.0;
  for (const auto& t : terms) {
    const double arg = dot(t.coef, b);
    if (!(arg > 0.0)) return -std::numeric_limits<double>::infinity();
    v += t.weight * std::log(arg);
  }
  return v;
}

std::array<double, 3> gradient(const std::vector<LogTerm>& terms,
                               const std::array<double, 3>& b) {
  std::array<double, 3> g{0.0, 0.0, 0.0};
  for (const auto& t : terms) {
    const double f = t.weight / dot(t.coef, b);
    for (int i = 0; i < 3; ++i) g[i] += f * t.coef[i];
  }
  return g;
}

}  // namespace

std::array<double, 3> project_to_simplex(const std::array<double, 3>& v) {
  std::array<double, 3> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (int i = 0; i < 3; ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / (i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = std::max(0.0, v[i] - tau);
  return out;
}

P1Result solve_p1(const Scenario& s, const Association& assoc,
                  std::span<const double> ap_powers, double total_hz, double tol,
                  int max_iters) {
  return solve_p1(s, assoc, link_efficiencies(s, ap_powers), total_hz, tol, max_iters);
}

P1Result solve_p1(const Scenario& s, const Association& assoc, const LinkEfficiencies& eff,
                  double total_hz, double tol, int max_iters) {
  P1Result result;
  result.slicing = SlicingRatios::uniform(total_hz);
  const auto terms = build_terms(s, assoc, eff);
  double total_weight = 0.0;
  for (const auto& t : terms) total_weight += t.weight;
  if (terms.empty() || !(total_weight > 0.0)) {
    result.utility = utility_p1(s, result.slicing, assoc, eff);
    return result;
  }

  // Gradients are divided by the total weight so the stationarity measure
  // ||b - proj(b + g)|| is scale-free.
  std::array<double, 3> b{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double f = value(terms, b);
  double step = 1.0;
  constexpr double kArmijo = 1e-4;
  int it = 0;
  double kkt = 0.0;
  for (; it < max_iters; ++it) {
    auto g = gradient(terms, b);
    for (auto& x : g) x /= total_weight;
    const auto probe = project_to_simplex({b[0] + g[0], b[1] + g[1], b[2] + g[2]});
    kkt = std::max({std::abs(probe[0] - b[0]), std::abs(probe[1] - b[1]),
                    std::abs(probe[2] - b[2])});
    if (kkt <= tol) break;

    step = std::min(step * 2.0, 1e6);
    bool moved = false;
    while (step > 1e-16) {
      const auto cand =
          project_to_simplex({b[0] + step * g[0], b[1] + step * g[1], b[2] + step * g[2]});
      const double fc = value(terms, cand) / total_weight;
      const double decrease = dot(g, {cand[0] - b[0], cand[1] - b[1], cand[2] - b[2]});
      if (fc >= f / total_weight + kArmijo * decrease) {
        moved = cand != b;
        b = cand;
        f = fc * total_weight;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  result.slicing = SlicingRatios::from_array(b, total_hz);
  result.iterations = it;
  result.kkt_residual = kkt;
  result.utility = utility_p1(s, result.slicing, assoc, eff);
  return result;
}

}  // namespace avslice
