#include "avslice/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace avslice {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double opposite_ratio(const SlicingRatios& b, EnbGroup own) {
  return b.group_ratio(opposite(own));
}

}  // namespace

SlicingRatios SlicingRatios::uniform(double total_hz) {
  return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, total_hz};
}

SlicingRatios SlicingRatios::from_array(const std::array<double, 3>& b, double total_hz) {
  return {b[0], b[1], b[2], total_hz};
}

bool SlicingRatios::on_simplex(double tol) const {
  for (double b : as_array()) {
    if (b < -tol || b > 1.0 + tol) return false;
  }
  return std::abs(beta1 + beta2 + beta_w - 1.0) <= tol;
}

Association Association::all_enb(const Scenario& s) {
  Association a;
  a.x_enb.assign(s.vehicle_count(), 1.0);
  a.x_ap.assign(s.vehicle_count(), 0.0);
  return a;
}

Association Association::from_choice(const Scenario& s, const std::vector<bool>& to_ap) {
  Association a = all_enb(s);
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    if (s.ap_covered(k) && to_ap[k]) {
      a.x_enb[k] = 0.0;
      a.x_ap[k] = 1.0;
    }
  }
  return a;
}

bool Association::is_binary(double tol) const {
  auto binary = [tol](double x) { return std::abs(x) <= tol || std::abs(x - 1.0) <= tol; };
  return std::all_of(x_enb.begin(), x_enb.end(), binary) &&
         std::all_of(x_ap.begin(), x_ap.end(), binary);
}

Allocation Allocation::zeros(std::size_t vehicles) {
  return {std::vector<double>(vehicles, 0.0), std::vector<double>(vehicles, 0.0),
          std::vector<double>(vehicles, 0.0)};
}

EffectiveLoads effective_loads(const Scenario& s, const Association& a) {
  EffectiveLoads l;
  l.n_prime.assign(s.ap_count(), 0.0);
  l.m_resid.assign(s.enb_count(), 0.0);
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    l.m_resid[s.serving_enb(k)] += a.x_enb[k];
    if (s.ap_covered(k)) l.n_prime[s.covering_ap(k)] += a.x_ap[k];
  }
  return l;
}

LinkEfficiencies LinkEfficiencies::scaled(double factor) const {
  LinkEfficiencies e = *this;
  for (auto* v : {&e.enb, &e.ap_other, &e.ap_wifi}) {
    for (auto& x : *v) x *= factor;
  }
  return e;
}

LinkTable::LinkTable(const Scenario& s) {
  const std::size_t n = s.vehicle_count();
  enb_.reserve(n);
  ap_other_.resize(n);
  ap_wifi_.resize(n);
  covered_.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    enb_.push_back(enb_link(s, s.serving_enb(k), k));
    if (s.ap_covered(k)) {
      covered_[k] = true;
      ap_other_[k] = ap_link(s, s.covering_ap(k), k, ApSlice::OtherEnbSlice);
      ap_wifi_[k] = ap_link(s, s.covering_ap(k), k, ApSlice::WifiSlice);
    }
  }
}

PowerAndSinr LinkTable::sinrs(std::span<const double> ap_powers) const {
  const std::size_t n = enb_.size();
  PowerAndSinr out;
  out.p_ap.assign(ap_powers.begin(), ap_powers.end());
  out.c_enb.assign(n, 0.0);
  out.c_ap_other.assign(n, 0.0);
  out.c_ap_wifi.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.c_enb[k] = enb_[k].evaluate(ap_powers);
    if (covered_[k]) {
      out.c_ap_other[k] = ap_other_[k].evaluate(ap_powers);
      out.c_ap_wifi[k] = ap_wifi_[k].evaluate(ap_powers);
    }
  }
  return out;
}

LinkEfficiencies LinkTable::efficiencies(std::span<const double> ap_powers) const {
  return efficiencies_from_sinr(sinrs(ap_powers));
}

LinkEfficiencies link_efficiencies(const Scenario& s, std::span<const double> ap_powers) {
  return LinkTable(s).efficiencies(ap_powers);
}

LinkEfficiencies efficiencies_from_sinr(const PowerAndSinr& aux) {
  auto convert = [](const std::vector<double>& c) {
    std::vector<double> r(c.size());
    std::transform(c.begin(), c.end(), r.begin(), spectrum_efficiency);
    return r;
  };
  return {convert(aux.c_enb), convert(aux.c_ap_other), convert(aux.c_ap_wifi)};
}

LinkRates link_rates(const Allocation& alloc, const LinkEfficiencies& eff, std::size_t k) {
  return {alloc.r_enb[k] * eff.enb[k],
          alloc.r_ap_other[k] * eff.ap_other[k] + alloc.r_ap_wifi[k] * eff.ap_wifi[k]};
}

std::vector<double> vehicle_rates(const Association& assoc, const Allocation& alloc,
                                  const LinkEfficiencies& eff) {
  std::vector<double> rates(assoc.x_enb.size());
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const auto r = link_rates(alloc, eff, k);
    rates[k] = assoc.x_enb[k] * r.enb + assoc.x_ap[k] * r.ap;
  }
  return rates;
}

double rate_of_vehicle(const Scenario& s, const Association& assoc, const Allocation& alloc,
                       std::span<const double> ap_powers, std::size_t vehicle) {
  const auto eff = link_efficiencies(s, ap_powers);
  const auto r = link_rates(alloc, eff, vehicle);
  return assoc.x_enb[vehicle] * r.enb + assoc.x_ap[vehicle] * r.ap;
}

double utility_p1(const Scenario& s, const SlicingRatios& slicing, const Association& assoc,
                  std::span<const double> ap_powers) {
  return utility_p1(s, slicing, assoc, link_efficiencies(s, ap_powers));
}

double utility_p1(const Scenario& s, const SlicingRatios& b, const Association& assoc,
                  const LinkEfficiencies& eff) {
  const auto loads = effective_loads(s, assoc);
  const double total = b.total_hz;
  double u = 0.0;
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    const std::size_t j = s.serving_enb(k);
    const EnbGroup g = s.enb(j).group;
    if (assoc.x_enb[k] > 0.0) {
      const double arg = b.group_ratio(g) * total * eff.enb[k] / loads.m_resid[j];
      if (!(arg > 0.0)) return kNegInf;
      u += assoc.x_enb[k] * std::log(arg);
    }
    if (s.ap_covered(k) && assoc.x_ap[k] > 0.0) {
      const std::size_t i = s.covering_ap(k);
      const double arg = (opposite_ratio(b, g) * total * eff.ap_other[k] +
                          b.beta_w * total * eff.ap_wifi[k]) /
                         loads.n_prime[i];
      if (!(arg > 0.0)) return kNegInf;
      u += assoc.x_ap[k] * std::log(arg);
    }
  }
  return u;
}

Allocation equal_allocation(const Scenario& s, const SlicingRatios& b,
                            const Association& assoc) {
  const auto loads = effective_loads(s, assoc);
  Allocation a = Allocation::zeros(s.vehicle_count());
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    const std::size_t j = s.serving_enb(k);
    const EnbGroup g = s.enb(j).group;
    if (assoc.x_enb[k] > 0.0 && loads.m_resid[j] > 0.0) {
      a.r_enb[k] = b.group_ratio(g) * b.total_hz / loads.m_resid[j];
    }
    if (s.ap_covered(k) && assoc.x_ap[k] > 0.0) {
      const double n = loads.n_prime[s.covering_ap(k)];
      if (n > 0.0) {
        a.r_ap_other[k] = opposite_ratio(b, g) * b.total_hz / n;
        a.r_ap_wifi[k] = b.beta_w * b.total_hz / n;
      }
    }
  }
  return a;
}

double throughput_objective(const Scenario& s, const Association& assoc,
                            const Allocation& alloc, std::span<const double> ap_powers) {
  return throughput_objective(assoc, alloc, link_efficiencies(s, ap_powers));
}

double throughput_objective(const Association& assoc, const Allocation& alloc,
                            const LinkEfficiencies& eff) {
  double total = 0.0;
  for (std::size_t k = 0; k < assoc.x_enb.size(); ++k) {
    const auto r = link_rates(alloc, eff, k);
    total += assoc.x_enb[k] * r.enb + assoc.x_ap[k] * r.ap;
  }
  return total;
}

double p3_objective(const Scenario&, const Association& assoc, const Allocation& alloc,
                    const PowerAndSinr& sinr_aux) {
  return throughput_objective(assoc, alloc, efficiencies_from_sinr(sinr_aux));
}

std::string_view to_string(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::Budget: return "budget";
    case ConstraintFamily::Nonnegativity: return "nonnegativity";
    case ConstraintFamily::AssociationBox: return "association_box";
    case ConstraintFamily::Coupling: return "coupling";
    case ConstraintFamily::SensitiveQos: return "sensitive_qos";
    case ConstraintFamily::TolerantQos: return "tolerant_qos";
    case ConstraintFamily::PowerBox: return "power_box";
    case ConstraintFamily::SinrAux: return "sinr_aux";
  }
  return "unknown";
}

double ResidualReport::worst(ConstraintFamily f) const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    if (e.family == f) w = std::min(w, e.value);
  }
  return w;
}

double ResidualReport::worst() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) w = std::min(w, e.value);
  return w;
}

ResidualReport constraint_residuals(const Scenario& s, const SlicingRatios& b,
                                    const Association& assoc, const Allocation& alloc,
                                    const PowerAndSinr& powers, const TrafficSpec& qos,
                                    double p_max_w) {
  ResidualReport rep;
  auto push = [&rep](ConstraintFamily f, std::size_t idx, double v) {
    rep.entries.push_back({f, idx, v});
  };
  const std::size_t n = s.vehicle_count();
  const double total = b.total_hz;

  // Budgets: only stations carrying load have a slice to exhaust.
  std::vector<double> enb_used(s.enb_count(), 0.0);
  std::vector<double> ap_other_used(s.ap_count(), 0.0);
  std::vector<double> ap_wifi_used(s.ap_count(), 0.0);
  const auto loads = effective_loads(s, assoc);
  for (std::size_t k = 0; k < n; ++k) {
    enb_used[s.serving_enb(k)] += assoc.x_enb[k] * alloc.r_enb[k];
    if (s.ap_covered(k)) {
      ap_other_used[s.covering_ap(k)] += assoc.x_ap[k] * alloc.r_ap_other[k];
      ap_wifi_used[s.covering_ap(k)] += assoc.x_ap[k] * alloc.r_ap_wifi[k];
    }
  }
  for (std::size_t j = 0; j < s.enb_count(); ++j) {
    if (loads.m_resid[j] <= 0.0) continue;
    const double cap = b.group_ratio(s.enb(j).group) * total;
    push(ConstraintFamily::Budget, j, -std::abs(enb_used[j] - cap) / total);
  }
  for (std::size_t i = 0; i < s.ap_count(); ++i) {
    if (loads.n_prime[i] <= 0.0) continue;
    const double cap_other = opposite_ratio(b, s.ap(i).group) * total;
    const double cap_wifi = b.beta_w * total;
    push(ConstraintFamily::Budget, s.enb_count() + 2 * i,
         -std::abs(ap_other_used[i] - cap_other) / total);
    push(ConstraintFamily::Budget, s.enb_count() + 2 * i + 1,
         -std::abs(ap_wifi_used[i] - cap_wifi) / total);
  }

  // QoS is judged on the received SINRs at the given powers.
  const auto xi = LinkTable(s).sinrs(powers.p_ap);
  const auto eff = efficiencies_from_sinr(xi);
  const auto floors = rate_floors(s, qos);
  for (std::size_t k = 0; k < n; ++k) {
    push(ConstraintFamily::Nonnegativity, k,
         std::min({alloc.r_enb[k], alloc.r_ap_other[k], alloc.r_ap_wifi[k]}) / total);
    const bool covered = s.ap_covered(k);
    if (covered) {
      push(ConstraintFamily::AssociationBox, k,
           std::min({assoc.x_enb[k], 1.0 - assoc.x_enb[k], assoc.x_ap[k], 1.0 - assoc.x_ap[k]}));
      push(ConstraintFamily::Coupling, k, -std::abs(assoc.x_enb[k] + assoc.x_ap[k] - 1.0));
    } else {
      // Outside AP coverage the eNB association is fixed to 1.
      push(ConstraintFamily::Coupling, k, -std::abs(assoc.x_enb[k] - 1.0));
    }
    const auto fam = s.vehicles()[k].traffic_class == TrafficClass::DelaySensitive
                         ? ConstraintFamily::SensitiveQos
                         : ConstraintFamily::TolerantQos;
    const auto r = link_rates(alloc, eff, k);
    push(fam, k, assoc.x_enb[k] * (r.enb - floors[k]) / floors[k]);
    if (covered) push(fam, k, assoc.x_ap[k] * (r.ap - floors[k]) / floors[k]);
  }

  for (std::size_t i = 0; i < powers.p_ap.size(); ++i) {
    push(ConstraintFamily::PowerBox, i,
         std::min(powers.p_ap[i], p_max_w - powers.p_ap[i]) / p_max_w);
  }

  if (!powers.c_enb.empty()) {
    auto aux = [&](const std::vector<double>& c, const std::vector<double>& truth,
                   std::size_t k) {
      push(ConstraintFamily::SinrAux, k, (truth[k] - c[k]) / std::max(1.0, truth[k]));
    };
    for (std::size_t k = 0; k < n; ++k) {
      aux(powers.c_enb, xi.c_enb, k);
      if (s.ap_covered(k)) {
        aux(powers.c_ap_other, xi.c_ap_other, k);
        aux(powers.c_ap_wifi, xi.c_ap_wifi, k);
      }
    }
  }
  return rep;
}

}  // namespace avslice
