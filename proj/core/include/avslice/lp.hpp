#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

namespace avslice::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  std::size_t var;
  double coef;
};

struct Row {
  std::vector<Term> terms;
  Sense sense;
  double rhs;
};

/// maximize c.x  subject to  rows, lower <= x <= upper.
/// Lower bounds must be finite.
class Problem {
 public:
  std::size_t add_variable(double objective, double lower = 0.0, double upper = kInfinity);
  void add_row(std::vector<Term> terms, Sense sense, double rhs);

  std::size_t variable_count() const { return objective_.size(); }
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<Row>& rows() const { return rows_; }

  double evaluate(const std::vector<double>& x) const;
  /// Largest violation of any row or bound at x (0 when feasible).
  double max_violation(const std::vector<double>& x) const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Row> rows_;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(Status s);

struct Options {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;  // relative to the largest right-hand side
  std::size_t max_pivots = 500000;
};

struct Result {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's smallest-index rule for both
/// the entering and the leaving variable.
Result solve(const Problem& problem, const Options& options = {});

}  // namespace avslice::lp
