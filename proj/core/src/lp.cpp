#include "avslice/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avslice::lp {

std::size_t Problem::add_variable(double objective, double lower, double upper) {
  if (!std::isfinite(lower)) throw std::invalid_argument("lower bound must be finite");
  if (upper < lower) throw std::invalid_argument("upper bound below lower bound");
  objective_.push_back(objective);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return objective_.size() - 1;
}

void Problem::add_row(std::vector<Term> terms, Sense sense, double rhs) {
  for (const auto& t : terms) {
    if (t.var >= objective_.size()) throw std::out_of_range("row references unknown variable");
  }
  rows_.push_back({std::move(terms), sense, rhs});
}

double Problem::evaluate(const std::vector<double>& x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) v += objective_[j] * x[j];
  return v;
}

double Problem::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
  }
  for (const auto& r : rows_) {
    double lhs = 0.0;
    for (const auto& t : r.terms) lhs += t.coef * x[t.var];
    switch (r.sense) {
      case Sense::LessEqual: worst = std::max(worst, lhs - r.rhs); break;
      case Sense::GreaterEqual: worst = std::max(worst, r.rhs - lhs); break;
      case Sense::Equal: worst = std::max(worst, std::abs(lhs - r.rhs)); break;
    }
  }
  return worst;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Row-major tableau [B^-1 A | B^-1 b] with an objective row of reduced costs
// r_j = c_B B^-1 A_j - c_j kept in step with every pivot.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(cols + 1), data_(rows * (cols + 1), 0.0),
        obj_(cols + 1, 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * stride_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * stride_ + j]; }
  double& rhs(std::size_t i) { return data_[i * stride_ + cols_]; }
  double rhs(std::size_t i) const { return data_[i * stride_ + cols_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<double>& obj() { return obj_; }

  void set_costs(const std::vector<double>& cost) {
    std::fill(obj_.begin(), obj_.end(), 0.0);
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = -cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &data_[i * stride_];
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] += cb * row[j];
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    double* prow = &data_[p * stride_];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j <= cols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    // Only columns that are nonzero in the pivot row change.
    nz_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j] != 0.0) nz_.push_back(j);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == p) continue;
      double* row = &data_[i * stride_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double f = obj_[q];
    if (f != 0.0) {
      for (std::size_t j : nz_) obj_[j] -= f * prow[j];
      obj_[q] = 0.0;
    }
    basis_[p] = q;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<double> data_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
};

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

PhaseOutcome run_phase(Tableau& t, std::size_t eligible_cols, const Options& opt,
                       std::size_t& pivots) {
  const double rc_tol = opt.pivot_tol;
  while (true) {
    // Bland: first improving column.
    std::size_t q = eligible_cols;
    for (std::size_t j = 0; j < eligible_cols; ++j) {
      if (t.obj()[j] < -rc_tol) {
        q = j;
        break;
      }
    }
    if (q == eligible_cols) return PhaseOutcome::Optimal;

    std::size_t p = t.rows();
    double best = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, q);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(0.0, t.rhs(i)) / a;
      const double eps = 1e-12 * std::max(1.0, best);
      if (p == t.rows() || ratio < best - eps) {
        p = i;
        best = ratio;
      } else if (ratio <= best + eps && t.basis()[i] < t.basis()[p]) {
        p = i;
        best = std::min(best, ratio);
      }
    }
    if (p == t.rows()) return PhaseOutcome::Unbounded;
    if (++pivots > opt.max_pivots) return PhaseOutcome::IterationLimit;
    t.pivot(p, q);
  }
}

}  // namespace

Result solve(const Problem& problem, const Options& opt) {
  const std::size_t n = problem.variable_count();
  const auto& lower = problem.lower();
  const auto& upper = problem.upper();

  // Shift x = lower + y and append finite upper bounds as rows.
  struct StdRow {
    std::vector<Term> terms;
    Sense sense;
    double rhs;
  };
  std::vector<StdRow> rows;
  rows.reserve(problem.row_count() + n);
  for (const auto& r : problem.rows()) {
    double rhs = r.rhs;
    for (const auto& term : r.terms) rhs -= term.coef * lower[term.var];
    rows.push_back({r.terms, r.sense, rhs});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(upper[j])) {
      rows.push_back({{{j, 1.0}}, Sense::LessEqual, upper[j] - lower[j]});
    }
  }
  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      r.rhs = -r.rhs;
      for (auto& term : r.terms) term.coef = -term.coef;
      if (r.sense == Sense::LessEqual) {
        r.sense = Sense::GreaterEqual;
      } else if (r.sense == Sense::GreaterEqual) {
        r.sense = Sense::LessEqual;
      }
    }
  }

  const std::size_t m = rows.size();
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::Equal) ++n_slack;
    if (r.sense != Sense::LessEqual) ++n_art;
  }
  const std::size_t art_begin = n + n_slack;
  const std::size_t cols = art_begin + n_art;

  Tableau t(m, cols);
  double rhs_scale = 1.0;
  {
    std::size_t s = n;
    std::size_t a = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = rows[i];
      for (const auto& term : r.terms) t.at(i, term.var) += term.coef;
      t.rhs(i) = r.rhs;
      rhs_scale = std::max(rhs_scale, std::abs(r.rhs));
      switch (r.sense) {
        case Sense::LessEqual:
          t.at(i, s) = 1.0;
          t.basis()[i] = s++;
          break;
        case Sense::GreaterEqual:
          t.at(i, s++) = -1.0;
          t.at(i, a) = 1.0;
          t.basis()[i] = a++;
          break;
        case Sense::Equal:
          t.at(i, a) = 1.0;
          t.basis()[i] = a++;
          break;
      }
    }
  }

  Result result;
  if (n_art > 0) {
    std::vector<double> cost(cols, 0.0);
    for (std::size_t j = art_begin; j < cols; ++j) cost[j] = -1.0;
    t.set_costs(cost);
    const auto outcome = run_phase(t, cols, opt, result.pivots);
    if (outcome == PhaseOutcome::IterationLimit) {
      result.status = Status::IterationLimit;
      return result;
    }
    if (-t.obj()[cols] > opt.feasibility_tol * rhs_scale) {
      result.status = Status::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible; rows where
    // no structural or slack column is available are redundant.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < art_begin) continue;
      std::size_t q = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(t.at(i, j)) > opt.pivot_tol) {
          q = j;
          break;
        }
      }
      if (q < art_begin) {
        t.pivot(i, q);
        ++result.pivots;
      }
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective()[j];
  t.set_costs(cost);
  const auto outcome = run_phase(t, art_begin, opt, result.pivots);
  if (outcome == PhaseOutcome::Unbounded) {
    result.status = Status::Unbounded;
    return result;
  }
  if (outcome == PhaseOutcome::IterationLimit) {
    result.status = Status::IterationLimit;
    return result;
  }

  result.x.assign(lower.begin(), lower.end());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = t.basis()[i];
    if (b < n) result.x[b] += std::max(0.0, t.rhs(i));
  }
  result.objective = problem.evaluate(result.x);
  result.status = Status::Optimal;
  return result;
}

}  // namespace avslice::lp
