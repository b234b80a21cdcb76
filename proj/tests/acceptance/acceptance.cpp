// Prints one PASS/FAIL line per acceptance criterion. Exits 0 once every
// criterion has been evaluated; with --strict, exits 1 if any line is FAIL.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "avslice/baselines.hpp"
#include "avslice/config.hpp"
#include "avslice/harness.hpp"
#include "avslice/model.hpp"
#include "avslice/qos.hpp"
#include "avslice/solvers.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "p2_oracles.hpp"

namespace {

using namespace avslice;
using avslice::testing::small_scenario;
using avslice::testing::uniform;

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const TrafficSpec t;
  const double s = min_rate_sensitive(t) / 1e3;
  const double n = min_rate_tolerant(t) / 1e3;
  report(1, std::abs(s - 140.37) <= 0.01 && n == 180.0,
         fmt("sensitive %.4f kbit/s", s) + fmt(", tolerant %.4f kbit/s", n));
}

// Inner allocation of the slicing problem for fixed slicing and binary
// association. The oracle maximizes the summed log rate per station by grid
// search, with an AP vehicle's two slice shares inside one logarithm. The
// detail also reports the per-slice reading, where each slice maximizes
// sum log(R r) on its own.
void criterion2() {
  double worst_coupled = 0.0, worst_split = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 3 + seed % 3;
    const Scenario s = small_scenario(seed, n);
    const auto eff = link_efficiencies(s, s.nominal_ap_powers());
    const SlicingRatios b = testing::random_interior_slicing(rng, 20e6);
    const Association x = testing::random_binary_association(s, rng);
    const Allocation a = equal_allocation(s, b, x);

    double u_equal = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto r = link_rates(a, eff, k);
      u_equal += std::log(x.x_ap[k] > 0.5 ? r.ap : r.enb);
    }
    // A single-slice station is the two-slice search with an empty second slice.
    auto slice_max = [](const std::vector<double>& r, double cap) {
      return testing::ap_coupled_log_max(r, std::vector<double>(r.size(), 0.0), cap, 0.0);
    };
    auto slice_equal = [](const std::vector<double>& r, double cap) {
      double v = 0.0;
      for (double e : r) v += std::log(cap / static_cast<double>(r.size()) * e);
      return v;
    };
    double u_coupled = 0.0, split_grid = 0.0, split_equal = 0.0;
    for (std::size_t j = 0; j < s.enb_count(); ++j) {
      std::vector<double> r;
      for (std::size_t k : s.enb_members(j)) {
        if (x.x_enb[k] > 0.5) r.push_back(eff.enb[k]);
      }
      const double cap = b.group_ratio(s.enb(j).group) * b.total_hz;
      const double v = slice_max(r, cap);
      u_coupled += v;
      split_grid += v;
      split_equal += slice_equal(r, cap);
    }
    for (std::size_t i = 0; i < s.ap_count(); ++i) {
      std::vector<double> ro, rw;
      for (std::size_t k : s.ap_members(i)) {
        if (x.x_ap[k] > 0.5) {
          ro.push_back(eff.ap_other[k]);
          rw.push_back(eff.ap_wifi[k]);
        }
      }
      const double cap_o = b.group_ratio(opposite(s.ap(i).group)) * b.total_hz;
      const double cap_w = b.beta_w * b.total_hz;
      u_coupled += testing::ap_coupled_log_max(ro, rw, cap_o, cap_w);
      split_grid += slice_max(ro, cap_o) + slice_max(rw, cap_w);
      split_equal += slice_equal(ro, cap_o) + slice_equal(rw, cap_w);
    }
    worst_coupled = std::max(worst_coupled, (u_coupled - u_equal) / std::abs(u_coupled));
    worst_split = std::max(worst_split, (split_grid - split_equal) / std::abs(split_grid));
  }
  report(2, worst_coupled <= 1e-3,
         fmt("worst gap to the grid optimum %.3e", worst_coupled) +
             fmt(" (limit 1e-3); per-slice reading gap %.1e", worst_split));
}

void criterion3() {
  std::mt19937_64 rng(303);
  double worst = -INFINITY;
  int points = 0;
  for (std::uint64_t sc = 1; sc <= 10; ++sc) {
    SimulationConfig c;
    c.road.rng_seed = sc;
    c.road.av_density_per_m = 0.04 + 0.016 * static_cast<double>(sc % 10);
    const Scenario s = c.build_scenario();
    const auto eff = link_efficiencies(s, s.nominal_ap_powers());
    for (int t = 0; t < 10; ++t) {
      const Association x = testing::random_binary_association(s, rng);
      const SlicingRatios b0 = testing::random_interior_slicing(rng, 20e6);
      auto f = [&](const Eigen::Vector3d& v) {
        SlicingRatios b = b0;
        b.beta1 = v[0];
        b.beta2 = v[1];
        b.beta_w = v[2];
        return utility_p1(s, b, x, eff);
      };
      const Eigen::Vector3d v0(b0.beta1, b0.beta2, b0.beta_w);
      const double h = 1e-4;
      Eigen::Matrix3d hess;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          Eigen::Vector3d ei = Eigen::Vector3d::Zero(), ej = Eigen::Vector3d::Zero();
          ei[i] = h;
          ej[j] = h;
          hess(i, j) = (f(v0 + ei + ej) - f(v0 + ei - ej) - f(v0 - ei + ej) + f(v0 - ei - ej)) /
                       (4 * h * h);
        }
      }
      hess = 0.5 * (hess + hess.transpose()).eval();
      const double scale = hess.cwiseAbs().maxCoeff();
      const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(hess);
      worst = std::max(worst, scale > 0 ? es.eigenvalues().maxCoeff() / scale : 0.0);
      ++points;
    }
  }
  report(3, worst <= 1e-6 && points == 100,
         std::to_string(points) + fmt(" points, max normalized eigenvalue %.2e", worst));
}

void criterion4() {
  std::mt19937_64 rng(404);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Scenario s = small_scenario(500 + t, 6);
    std::vector<double> p(4);
    for (auto& v : p) v = uniform(rng, 0.1, 2.5);
    const auto eff = link_efficiencies(s, p);
    auto rand_alloc = [&] {
      Allocation a = Allocation::zeros(s.vehicle_count());
      for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
        a.r_enb[k] = uniform(rng, 0, 4e6);
        a.r_ap_other[k] = uniform(rng, 0, 4e6);
        a.r_ap_wifi[k] = uniform(rng, 0, 4e6);
      }
      return a;
    };
    auto rand_assoc = [&] {
      Association x = Association::all_enb(s);
      for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
        if (!s.ap_covered(k)) continue;
        x.x_ap[k] = uniform(rng, 0, 1);
        x.x_enb[k] = 1 - x.x_ap[k];
      }
      return x;
    };
    auto rel = [](double mid, double a, double b) {
      return std::abs(mid - 0.5 * (a + b)) / std::max(1e-300, std::abs(0.5 * (a + b)));
    };
    // Allocation block.
    const Association x = rand_assoc();
    const Allocation a1 = rand_alloc(), a2 = rand_alloc();
    Allocation am = a1;
    for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
      am.r_enb[k] = 0.5 * (a1.r_enb[k] + a2.r_enb[k]);
      am.r_ap_other[k] = 0.5 * (a1.r_ap_other[k] + a2.r_ap_other[k]);
      am.r_ap_wifi[k] = 0.5 * (a1.r_ap_wifi[k] + a2.r_ap_wifi[k]);
    }
    worst = std::max(worst, rel(throughput_objective(x, am, eff), throughput_objective(x, a1, eff),
                                throughput_objective(x, a2, eff)));
    // Association block.
    const Association x1 = rand_assoc(), x2 = rand_assoc();
    Association xm = x1;
    for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
      xm.x_enb[k] = 0.5 * (x1.x_enb[k] + x2.x_enb[k]);
      xm.x_ap[k] = 0.5 * (x1.x_ap[k] + x2.x_ap[k]);
    }
    worst = std::max(worst, rel(throughput_objective(xm, a1, eff), throughput_objective(x1, a1, eff),
                                throughput_objective(x2, a1, eff)));
  }
  report(4, worst <= 1e-9, fmt("100 pairs per block, worst midpoint deviation %.2e", worst));
}

void criterion5() {
  double worst = 0.0;
  int compared = 0, mismatched_status = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed + 1000);
    const Scenario s = small_scenario(600 + seed, 4);
    const auto eff = link_efficiencies(s, s.nominal_ap_powers());
    const auto floors = rate_floors(s, TrafficSpec{});
    const Association x = testing::random_binary_association(s, rng);
    const SlicingRatios b = testing::random_interior_slicing(rng, seed % 2 ? 20e6 : 1e6, 0.01);
    const auto got = solve_p2_allocation(s, b, x, eff, floors);
    const auto want = testing::allocation_oracle(s, b, x, eff, floors);
    if (got.has_value() != want.has_value()) {
      ++mismatched_status;
    } else if (want) {
      worst = std::max(worst, std::abs(throughput_objective(x, *got, eff) - *want) / *want);
      ++compared;
    }

    Allocation a = Allocation::zeros(s.vehicle_count());
    for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
      a.r_enb[k] = uniform(rng, 0, 0.1e6);
      a.r_ap_other[k] = uniform(rng, 0, 0.1e6);
      a.r_ap_wifi[k] = uniform(rng, 0, 0.1e6);
    }
    const auto gx = solve_p2_association(s, b, a, eff, floors);
    const auto wx = testing::association_oracle(s, a, eff, floors);
    if (gx.has_value() != wx.has_value()) {
      ++mismatched_status;
    } else if (wx) {
      worst = std::max(worst, std::abs(throughput_objective(*gx, a, eff) - *wx) / *wx);
      ++compared;
    }
  }
  report(5, worst <= 1e-6 && mismatched_status == 0,
         std::to_string(compared) + " feasible comparisons, " + std::to_string(mismatched_status) +
             fmt(" feasibility mismatches, worst relative gap %.2e", worst));
}

// ---------------------------------------------------------------------------

SimulationConfig table_config(double density) {
  SimulationConfig c;
  c.road.av_density_per_m = density;
  c.sensitive_prob = 0.8;
  c.aggregate_spectrum_hz = 20e6;
  c.ap_power_w = 2.5;
  return c;
}

struct DensityRun {
  double density;
  SchemeResult proposed, max_utility, max_sinr;
  AcsOutcome acs;
};

std::vector<DensityRun> density_runs() {
  std::vector<DensityRun> out;
  for (double d : {0.05, 0.10, 0.15, 0.20}) {
    const SimulationConfig c = table_config(d);
    const Scenario s = c.build_scenario();
    DensityRun r{d, {}, {}, {}, {}};
    r.acs = run_acs(s, c.traffic, c.aggregate_spectrum_hz, c.acs);
    r.proposed = run_scheme(Scheme::Proposed, s, c.traffic, c.aggregate_spectrum_hz, c.acs);
    r.max_utility = run_scheme(Scheme::MaxUtility, s, c.traffic, c.aggregate_spectrum_hz, c.acs);
    r.max_sinr = run_scheme(Scheme::MaxSinr, s, c.traffic, c.aggregate_spectrum_hz, c.acs);
    out.push_back(std::move(r));
  }
  return out;
}

void criterion6(const std::vector<DensityRun>& runs) {
  bool ok = true;
  std::string detail = "iterations";
  for (const auto& r : runs) {
    const bool converged = r.acs.status == AcsStatus::Converged && r.acs.iterations <= 100 &&
                           !r.acs.trace.records.empty() &&
                           std::abs(r.acs.trace.records.back().delta_mbps) <= AcsConfig{}.kappa1;
    ok = ok && converged;
    detail += fmt(" %.2f:", r.density) + std::to_string(r.acs.iterations) +
              (converged ? "" : "(" + std::string(to_string(r.acs.status)) + ")");
  }
  report(6, ok, detail);
}

void criterion7(const std::vector<DensityRun>& runs) {
  const auto& p = runs.front().proposed.powers;
  const bool edge = std::abs(p[0] - 2.5) <= 1e-6 && std::abs(p[3] - 2.5) <= 1e-6;
  const bool inner = p[1] > 2.3 && p[1] < 2.5 && p[2] > 2.3 && p[2] < 2.5;
  char buf[160];
  std::snprintf(buf, sizeof buf, "AP powers at density 0.05: %.4f %.4f %.4f %.4f W", p[0], p[1],
                p[2], p[3]);
  report(7, runs.front().proposed.feasible && edge && inner,
         std::string(buf) + " (edge at 2.5 W: " + (edge ? "yes" : "no") +
             ", inner in (2.3, 2.5): " + (inner ? "yes" : "no") + ")");
}

void criterion8(const std::vector<DensityRun>& runs) {
  bool ok = true;
  std::string detail;
  for (const auto& r : runs) {
    const bool high = r.density >= 0.10 - 1e-12;
    ok = ok && r.proposed.feasible;
    if (high) ok = ok && !r.max_sinr.feasible && !r.max_utility.feasible;
    auto mark = [](const SchemeResult& x) {
      return x.feasible ? fmt("%.0f", x.throughput_bps / 1e6) : std::string("N/A");
    };
    detail += fmt(" %.2f:", r.density) + mark(r.proposed) + "/" + mark(r.max_utility) + "/" +
              mark(r.max_sinr);
  }
  report(8, ok, "Mbit/s proposed/max-utility/max-SINR" + detail);
}

// ---------------------------------------------------------------------------

std::vector<ResultRow> spectrum_sweep(double ap_power_w, const std::vector<Scheme>& schemes) {
  ExperimentPlan plan;
  plan.axis = SweepAxis::AggregateSpectrum;
  plan.values = {3, 6, 9, 12, 15, 18, 21};
  plan.replications = 5;
  plan.base_seed = 1;
  plan.schemes = schemes;
  plan.base = table_config(0.05);
  plan.base.ap_power_w = ap_power_w;
  return run_plan(plan);
}

void criterion9() {
  const auto rows = spectrum_sweep(1.0, {Scheme::Proposed, Scheme::MaxUtility, Scheme::MaxSinr});
  struct Cell {
    int feasible = 0, total = 0;
    double sum = 0.0;
  };
  std::map<std::pair<double, Scheme>, Cell> cells;
  for (const auto& r : rows) {
    auto& c = cells[{r.axis_value, r.scheme}];
    ++c.total;
    if (r.feasible) {
      ++c.feasible;
      c.sum += r.throughput_bps;
    }
  }
  bool dominance = true;
  std::string detail = "mean Mbit/s proposed vs max-utility:";
  for (double w : {3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 21.0}) {
    const Cell& p = cells[{w, Scheme::Proposed}];
    const Cell& u = cells[{w, Scheme::MaxUtility}];
    if (u.feasible == u.total) {
      const bool ok = p.feasible == p.total && p.sum >= u.sum;
      dominance = dominance && ok;
      detail += fmt(" %g:", w) + fmt("%.0f", p.sum / 5e6) + fmt(">=%.0f", u.sum / 5e6);
    } else {
      detail += fmt(" %g:", w) + fmt("%.0f", p.feasible == p.total ? p.sum / 5e6 : NAN) + ">=N/A";
    }
  }
  const Cell& p3 = cells[{3.0, Scheme::Proposed}];
  const Cell& u3 = cells[{3.0, Scheme::MaxUtility}];
  const Cell& s3 = cells[{3.0, Scheme::MaxSinr}];
  const bool onset = p3.feasible == p3.total && u3.feasible == 0 && s3.feasible == 0;
  detail += "; at 3 MHz feasible seeds proposed " + std::to_string(p3.feasible) +
            "/5, max-utility " + std::to_string(u3.feasible) + "/5, max-SINR " +
            std::to_string(s3.feasible) + "/5";
  report(9, dominance && onset, detail);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j);
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : NAN;
}

void criterion10(const std::vector<DensityRun>& runs) {
  const auto rows = spectrum_sweep(2.5, {Scheme::Proposed});
  std::map<std::uint64_t, std::vector<std::pair<double, double>>> per_seed;
  bool all_feasible = true;
  for (const auto& r : rows) {
    all_feasible = all_feasible && r.feasible;
    per_seed[r.seed].push_back({r.axis_value, r.throughput_bps});
  }
  int violations = 0;
  for (auto& [seed, pts] : per_seed) {
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].second < pts[i - 1].second * (1 - 1e-9)) ++violations;
    }
  }
  const bool monotone = all_feasible && violations == 0;

  // beta_w trend: mean over five seeds per density, plus the default seed.
  std::vector<double> dens, mean_bw, seed1_bw;
  for (const auto& r : runs) {
    dens.push_back(r.density);
    seed1_bw.push_back(r.proposed.slicing.beta_w);
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SimulationConfig c = table_config(r.density);
      c.road.rng_seed = seed;
      const Scenario s = c.build_scenario();
      sum += run_scheme(Scheme::Proposed, s, c.traffic, c.aggregate_spectrum_hz, c.acs)
                 .slicing.beta_w;
    }
    mean_bw.push_back(sum / 5.0);
  }
  const double rho = spearman(dens, mean_bw);
  const bool trend = std::isfinite(rho) && rho > 0.0;
  std::string bw = "mean beta_w";
  for (double v : mean_bw) bw += fmt(" %.4f", v);
  report(10, monotone && trend,
         "throughput vs spectrum per seed: " + std::to_string(violations) +
             " decreases over 5 seeds (" + (monotone ? "ok" : "violated") + "); " + bw +
             fmt(", Spearman %.3f", rho) + (trend ? " (ok)" : " (needs > 0)"));
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  const auto runs = density_runs();
  criterion6(runs);
  criterion7(runs);
  criterion8(runs);
  criterion9();
  criterion10(runs);
  std::printf("acceptance summary: %d of 10 criteria pass\n", 10 - g_failures);
  return strict && g_failures > 0 ? 1 : 0;
}
