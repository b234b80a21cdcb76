#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "avslice/solvers.hpp"

namespace avslice {

void AcsConfig::validate() const {
  if (!(kappa1 > 0.0) || !(kappa2 > kappa1)) {
    throw std::invalid_argument("acs: require kappa2 > kappa1 > 0");
  }
  for (double t : {theta1, theta2}) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("acs: theta must lie in (0, 1]");
  }
  if (max_iters < 1) throw std::invalid_argument("acs: max_iters must be positive");
  if (!(p_max_w > 0.0)) throw std::invalid_argument("acs: p_max_w must be positive");
  if (!(initial_power_w >= 0.0 && initial_power_w <= p_max_w)) {
    throw std::invalid_argument("acs: initial power must lie in [0, p_max_w]");
  }
  if (!(p1_tol > 0.0) || p1_max_iters < 1 || p3_max_rounds < 0 || !(p3_power_tol > 0.0)) {
    throw std::invalid_argument("acs: invalid inner solver limits");
  }
}

std::string_view to_string(AcsStatus s) {
  switch (s) {
    case AcsStatus::Converged: return "converged";
    case AcsStatus::IterationLimit: return "iteration_limit";
    case AcsStatus::NoSolution: return "no_solution";
  }
  return "unknown";
}

std::string AcsTrace::to_csv() const {
  std::string out = "iteration,utility_mbps,delta_mbps,theta,beta1,beta2,beta_w";
  const std::size_t n_ap = records.empty() ? 0 : records.front().powers.size();
  for (std::size_t i = 0; i < n_ap; ++i) out += ",p_ap" + std::to_string(i + 1);
  out += '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += ',';
    out += buf;
  };
  for (const auto& r : records) {
    out += std::to_string(r.iteration);
    num(r.utility_mbps);
    num(r.delta_mbps);
    num(r.theta);
    num(r.slicing.beta1);
    num(r.slicing.beta2);
    num(r.slicing.beta_w);
    for (double p : r.powers) num(p);
    out += '\n';
  }
  return out;
}

namespace {

void blend(std::vector<double>& cur, const std::vector<double>& next, double theta) {
  for (std::size_t k = 0; k < cur.size(); ++k) cur[k] += theta * (next[k] - cur[k]);
}

}  // namespace

AcsOutcome run_acs(const Scenario& s, const TrafficSpec& qos, double total_hz,
                   const AcsConfig& config, const AcsInit& init) {
  config.validate();
  const LinkTable table(s);
  const auto floors = rate_floors(s, qos);
  const std::vector<double> p0 =
      init.powers ? *init.powers : std::vector<double>(s.ap_count(), config.initial_power_w);
  if (p0.size() != s.ap_count()) throw std::invalid_argument("acs: power vector size");
  const Association x0 = init.association ? *init.association : max_sinr_association(s, p0);

  P3Options p3opt;
  p3opt.p_max_w = config.p_max_w;
  p3opt.max_rounds = config.p3_max_rounds;
  p3opt.power_tol = config.p3_power_tol;
  p3opt.association_threshold = config.association_threshold;

  AcsOutcome out;
  AcsSolution& st = out.solution;
  st.association = x0;
  st.powers = p0;
  bool have_block_state = false;  // slicing and allocation not yet produced
  bool uniform_next = false;
  double u_prev = 0.0;
  double du_prev = HUGE_VAL;

  for (int t = 1; t <= config.max_iters; ++t) {
    out.iterations = t;
    const auto eff = table.efficiencies(st.powers);
    const SlicingRatios beta_step =
        uniform_next ? SlicingRatios::uniform(total_hz)
                     : solve_p1(s, st.association, eff, total_hz, config.p1_tol,
                                config.p1_max_iters)
                           .slicing;
    uniform_next = false;
    out.last_slicing_step = beta_step;

    auto r_step = solve_p2_allocation(s, beta_step, st.association, eff, floors,
                                      config.association_threshold);
    std::optional<Association> x_step;
    if (r_step) x_step = solve_p2_association(s, beta_step, *r_step, eff, floors, &st.association);
    if (!r_step || !x_step) {
      out.trace.records.push_back({t, u_prev, 0.0, 0.0, beta_step, st.powers, false});
      if (out.reinitializations >= 1) {
        out.status = AcsStatus::NoSolution;
        return out;
      }
      ++out.reinitializations;
      st.association = max_sinr_association(s, p0);
      st.powers = p0;
      have_block_state = false;
      uniform_next = true;
      u_prev = 0.0;
      du_prev = HUGE_VAL;
      continue;
    }
    const double theta = std::abs(du_prev) <= config.kappa2 ? config.theta2 : config.theta1;
    if (!have_block_state) {
      st.slicing = beta_step;
      st.allocation = *r_step;
      have_block_state = true;
    } else {
      auto b = st.slicing.as_array();
      const auto bn = beta_step.as_array();
      for (int i = 0; i < 3; ++i) b[i] += theta * (bn[i] - b[i]);
      st.slicing = SlicingRatios::from_array(b, total_hz);
      blend(st.allocation.r_enb, r_step->r_enb, theta);
      blend(st.allocation.r_ap_other, r_step->r_ap_other, theta);
      blend(st.allocation.r_ap_wifi, r_step->r_ap_wifi, theta);
    }
    blend(st.association.x_enb, x_step->x_enb, theta);
    blend(st.association.x_ap, x_step->x_ap, theta);
    // Powers are tuned for the damped point that is carried forward, so the
    // next iteration starts from rates the power step has protected.
    const auto p3 = solve_p3(s, st.slicing, st.association, st.allocation, qos, st.powers, p3opt);
    st.powers = p3.solution.p_ap;

    const double u =
        throughput_objective(st.association, st.allocation, table.efficiencies(st.powers)) /
        1e6;
    const double du = u - u_prev;
    out.trace.records.push_back({t, u, du, theta, st.slicing, st.powers, true});
    if (std::abs(du) <= config.kappa1) {
      out.status = AcsStatus::Converged;
      return out;
    }
    u_prev = u;
    du_prev = du;
  }
  out.status = have_block_state ? AcsStatus::IterationLimit : AcsStatus::NoSolution;
  return out;
}

}  // namespace avslice
