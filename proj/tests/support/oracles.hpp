#pragma once

// Test-only reference solvers. They share no code with the library's solvers.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace avslice::testing {

enum class RowSense { Le, Eq, Ge };

/// max c.x subject to rows and lb <= x <= ub (ub may be +inf).
struct SmallLp {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<RowSense> sense;
  std::vector<double> b;
  std::vector<double> lb;
  std::vector<double> ub;
};

/// Enumerates every basic solution (n linearly independent active
/// constraints), keeps the feasible ones and returns the best objective.
/// Exponential; meant for a handful of variables.
inline std::optional<double> vertex_enumeration_max(const SmallLp& lp, double tol = 1e-9) {
  const std::size_t n = lp.c.size();
  struct Plane {
    std::vector<double> coef;
    double rhs;
  };
  std::vector<Plane> planes;
  std::vector<std::size_t> forced;
  for (std::size_t r = 0; r < lp.a.size(); ++r) {
    if (lp.sense[r] == RowSense::Eq) forced.push_back(planes.size());
    planes.push_back({lp.a[r], lp.b[r]});
  }
  std::vector<std::size_t> optional_planes;
  for (std::size_t r = 0; r < lp.a.size(); ++r) {
    if (lp.sense[r] != RowSense::Eq) optional_planes.push_back(r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    optional_planes.push_back(planes.size());
    planes.push_back({e, lp.lb[i]});
    if (std::isfinite(lp.ub[i])) {
      optional_planes.push_back(planes.size());
      planes.push_back({e, lp.ub[i]});
    }
  }
  if (forced.size() > n) return std::nullopt;
  const std::size_t need = n - forced.size();

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = std::max(1.0, std::abs(x[i]));
      if (x[i] < lp.lb[i] - tol * scale || x[i] > lp.ub[i] + tol * scale) return false;
    }
    for (std::size_t r = 0; r < lp.a.size(); ++r) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < n; ++i) lhs += lp.a[r][i] * x[i];
      const double scale = std::max(1.0, std::abs(lp.b[r]));
      if (lp.sense[r] == RowSense::Le && lhs > lp.b[r] + tol * scale) return false;
      if (lp.sense[r] == RowSense::Ge && lhs < lp.b[r] - tol * scale) return false;
      if (lp.sense[r] == RowSense::Eq && std::abs(lhs - lp.b[r]) > tol * scale) return false;
    }
    return true;
  };

  std::optional<double> best;
  std::vector<std::size_t> pick(need);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == need) {
      Eigen::MatrixXd m(n, n);
      Eigen::VectorXd rhs(n);
      std::size_t row = 0;
      for (std::size_t p : forced) {
        for (std::size_t i = 0; i < n; ++i) m(row, i) = planes[p].coef[i];
        rhs[row++] = planes[p].rhs;
      }
      for (std::size_t p : pick) {
        for (std::size_t i = 0; i < n; ++i) m(row, i) = planes[p].coef[i];
        rhs[row++] = planes[p].rhs;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (lu.rank() < static_cast<Eigen::Index>(n)) return;
      const Eigen::VectorXd x = lu.solve(rhs);
      if (!feasible(x)) return;
      double obj = 0.0;
      for (std::size_t i = 0; i < n; ++i) obj += lp.c[i] * x[i];
      if (!best || obj > *best) best = obj;
      return;
    }
    for (std::size_t k = from; k < optional_planes.size(); ++k) {
      pick[depth] = optional_planes[k];
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// Grid maximum of f over {b >= 0, sum b = 1} with the given step.
inline std::array<double, 3> simplex_grid_argmax(
    const std::function<double(const std::array<double, 3>&)>& f, double step) {
  const int steps = static_cast<int>(std::lround(1.0 / step));
  std::array<double, 3> best{1.0 / 3, 1.0 / 3, 1.0 / 3};
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const std::array<double, 3> b{i * step, j * step, (steps - i - j) * step};
      const double v = f(b);
      if (v > best_val) {
        best_val = v;
        best = b;
      }
    }
  }
  return best;
}

/// Maximum over two share simplices s, t of
///   sum_k log(s_k * cap_o * r_o[k] + t_k * cap_w * r_w[k])
/// by a grid refined around the incumbent. The objective is concave, so the
/// zoom cannot lose the optimum.
inline double ap_coupled_log_max(const std::vector<double>& r_o, const std::vector<double>& r_w,
                                 double cap_o, double cap_w) {
  const std::size_t n = r_o.size();
  if (n == 0) return 0.0;
  auto value = [&](const std::vector<double>& s, const std::vector<double>& t) {
    double v = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double rate = s[k] * cap_o * r_o[k] + t[k] * cap_w * r_w[k];
      if (!(rate > 0.0)) return -std::numeric_limits<double>::infinity();
      v += std::log(rate);
    }
    return v;
  };
  if (n == 1) return value({1.0}, {1.0});
  // Free coordinates: first n-1 shares of each simplex.
  const std::size_t dims = 2 * (n - 1);
  std::vector<double> center(dims, 1.0 / static_cast<double>(n));
  double radius = 0.5;
  double best = -std::numeric_limits<double>::infinity();
  const int per_dim = dims <= 2 ? 101 : (dims <= 4 ? 21 : 9);
  for (int round = 0; round < 40; ++round) {
    std::vector<double> best_pt = center;
    std::vector<int> idx(dims, 0);
    while (true) {
      std::vector<double> pt(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        pt[d] = center[d] - radius + 2.0 * radius * idx[d] / (per_dim - 1);
      }
      std::vector<double> s(n), t(n);
      double ss = 0.0, ts = 0.0;
      bool ok = true;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        s[k] = pt[k];
        t[k] = pt[n - 1 + k];
        ok = ok && s[k] >= 0.0 && t[k] >= 0.0;
        ss += s[k];
        ts += t[k];
      }
      s[n - 1] = 1.0 - ss;
      t[n - 1] = 1.0 - ts;
      ok = ok && s[n - 1] >= -1e-15 && t[n - 1] >= -1e-15;
      if (ok) {
        const double v = value(s, t);
        if (v > best) {
          best = v;
          best_pt = pt;
        }
      }
      std::size_t d = 0;
      while (d < dims && ++idx[d] == per_dim) idx[d++] = 0;
      if (d == dims) break;
    }
    center = best_pt;
    radius *= 0.5;
  }
  return best;
}

}  // namespace avslice::testing
