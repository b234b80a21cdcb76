#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avslice/baselines.hpp"
#include "avslice/config.hpp"

namespace avslice {

enum class SweepAxis { AggregateSpectrum, SensitiveProb, AvDensity };

/// "spectrum_mhz", "sensitive_prob", "density".
std::string_view to_string(SweepAxis a);
std::optional<SweepAxis> axis_from_string(std::string_view name);

/// One sweep: every (seed, axis value, scheme) cell is an independent solve.
/// Spectrum values are given in MHz.
struct ExperimentPlan {
  SweepAxis axis = SweepAxis::AvDensity;
  std::vector<double> values;
  int replications = 5;
  std::uint64_t base_seed = 1;
  std::vector<Scheme> schemes{Scheme::Proposed, Scheme::MaxUtility, Scheme::MaxSinr};
  SimulationConfig base;

  /// Throws ConfigError on out-of-range axis values or replications < 1.
  void validate() const;
};

/// Copy of `base` with the axis parameter set to `value` (MHz for spectrum).
SimulationConfig apply_axis(const SimulationConfig& base, SweepAxis axis, double value);

struct ResultRow {
  std::uint64_t seed = 0;
  double axis_value = 0.0;
  Scheme scheme = Scheme::Proposed;
  bool feasible = false;
  double throughput_bps = 0.0;
  SlicingRatios slicing;
  std::vector<double> powers;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::string error;  // non-empty when the cell threw
};

/// Worker count from AVSLICE_WORKERS, clamped to [1, 64]; defaults to the
/// hardware concurrency.
unsigned worker_count();

/// Rows are ordered by (axis value, seed, scheme) as listed in the plan,
/// independent of the worker count. Seeds are base_seed + r.
std::vector<ResultRow> run_plan(const ExperimentPlan& plan, unsigned workers = 0);

/// Fixed columns: seed,axis_value,scheme,feasible,throughput_bps,beta1,beta2,
/// beta_w,iterations,wall_time_s,powers,error. Powers are ';'-joined.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);

enum class OutputFormat { Csv, Json };

/// Writes results.csv or results.json into `dir` (created if missing). With
/// `plots`, also throughput.svg and slicing.svg. Wall times are excluded from
/// the plots so those stay reproducible. Returns the paths written. Throws
/// std::runtime_error on I/O failure or `plots` with no rows.
std::vector<std::filesystem::path> emit_outputs(const std::vector<ResultRow>& rows,
                                                const std::filesystem::path& dir,
                                                OutputFormat format, bool plots,
                                                std::string_view axis_label = "axis");

}  // namespace avslice
