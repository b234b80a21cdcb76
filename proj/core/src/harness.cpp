#include "avslice/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <thread>

#include "avslice/svg.hpp"
#include "json.hpp"

namespace avslice {

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::AggregateSpectrum: return "spectrum_mhz";
    case SweepAxis::SensitiveProb: return "sensitive_prob";
    case SweepAxis::AvDensity: return "density";
  }
  return "unknown";
}

std::optional<SweepAxis> axis_from_string(std::string_view name) {
  for (auto a : {SweepAxis::AggregateSpectrum, SweepAxis::SensitiveProb, SweepAxis::AvDensity}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

void ExperimentPlan::validate() const {
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (schemes.empty()) throw ConfigError("plan needs at least one scheme");
  for (double v : values) {
    bool ok = std::isfinite(v);
    switch (axis) {
      case SweepAxis::AggregateSpectrum: ok = ok && v > 0.0; break;
      case SweepAxis::SensitiveProb: ok = ok && v >= 0.1 && v <= 0.9; break;
      case SweepAxis::AvDensity: ok = ok && v >= 0.04 && v <= 0.20; break;
    }
    if (!ok) {
      throw ConfigError("axis value " + std::to_string(v) + " out of range for " +
                        std::string(to_string(axis)));
    }
  }
  base.validate();
}

SimulationConfig apply_axis(const SimulationConfig& base, SweepAxis axis, double value) {
  SimulationConfig c = base;
  switch (axis) {
    case SweepAxis::AggregateSpectrum: c.aggregate_spectrum_hz = value * 1e6; break;
    case SweepAxis::SensitiveProb: c.sensitive_prob = value; break;
    case SweepAxis::AvDensity: c.road.av_density_per_m = value; break;
  }
  return c;
}

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("AVSLICE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  return std::clamp(n, 1u, 64u);
}

namespace {

struct Cell {
  double axis_value;
  std::uint64_t seed;
  Scheme scheme;
};

ResultRow evaluate(const ExperimentPlan& plan, const Cell& cell) {
  ResultRow row;
  row.seed = cell.seed;
  row.axis_value = cell.axis_value;
  row.scheme = cell.scheme;
  const auto start = std::chrono::steady_clock::now();
  try {
    SimulationConfig cfg = apply_axis(plan.base, plan.axis, cell.axis_value);
    cfg.road.rng_seed = cell.seed;
    const Scenario s = cfg.build_scenario();
    const SchemeResult r =
        run_scheme(cell.scheme, s, cfg.traffic, cfg.aggregate_spectrum_hz, cfg.acs);
    row.feasible = r.feasible;
    row.throughput_bps = r.feasible ? r.throughput_bps : 0.0;
    row.slicing = r.slicing;
    row.powers = r.powers;
    row.iterations = r.iterations;
  } catch (const std::exception& e) {
    row.feasible = false;
    row.error = e.what();
  }
  row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  out << content;
  if (!out.flush()) throw std::runtime_error("failed writing " + p.string());
}

}  // namespace

std::vector<ResultRow> run_plan(const ExperimentPlan& plan, unsigned workers) {
  plan.validate();
  std::vector<Cell> cells;
  for (double v : plan.values) {
    for (int r = 0; r < plan.replications; ++r) {
      for (Scheme sc : plan.schemes) {
        cells.push_back({v, plan.base_seed + static_cast<std::uint64_t>(r), sc});
      }
    }
  }
  std::vector<ResultRow> rows(cells.size());
  if (cells.empty()) return rows;
  if (workers == 0) workers = worker_count();
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));

  // Each slot is written by exactly one worker.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      rows[i] = evaluate(plan, cells[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "seed,axis_value,scheme,feasible,throughput_bps,beta1,beta2,beta_w,iterations,"
      "wall_time_s,powers,error\n";
  for (const auto& r : rows) {
    std::string powers;
    for (std::size_t i = 0; i < r.powers.size(); ++i) {
      if (i) powers += ';';
      powers += fmt_double(r.powers[i]);
    }
    out += std::to_string(r.seed) + ',' + fmt_double(r.axis_value) + ',' +
           std::string(to_string(r.scheme)) + ',' + (r.feasible ? "1" : "0") + ',' +
           fmt_double(r.throughput_bps) + ',' + fmt_double(r.slicing.beta1) + ',' +
           fmt_double(r.slicing.beta2) + ',' + fmt_double(r.slicing.beta_w) + ',' +
           std::to_string(r.iterations) + ',' + fmt_double(r.wall_time_s) + ',' + powers +
           ',' + csv_field(r.error) + '\n';
  }
  return out;
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["axis_value"] = r.axis_value;
    j["scheme"] = std::string(to_string(r.scheme));
    j["feasible"] = r.feasible;
    j["throughput_bps"] = r.throughput_bps;
    j["beta"] = {r.slicing.beta1, r.slicing.beta2, r.slicing.beta_w};
    j["powers_w"] = r.powers;
    j["iterations"] = r.iterations;
    j["wall_time_s"] = r.wall_time_s;
    if (!r.error.empty()) j["error"] = r.error;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_outputs(const std::vector<ResultRow>& rows,
                                                const std::filesystem::path& dir,
                                                OutputFormat format, bool plots,
                                                std::string_view axis_label) {
  if (plots && rows.empty()) throw std::runtime_error("plots need at least one row");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  if (format == OutputFormat::Csv) {
    written.push_back(dir / "results.csv");
    write_file(written.back(), rows_to_csv(rows));
  } else {
    written.push_back(dir / "results.json");
    write_file(written.back(), rows_to_json(rows));
  }
  if (!plots) return written;

  std::vector<double> axis_values;
  std::vector<Scheme> schemes;
  for (const auto& r : rows) {
    if (std::find(axis_values.begin(), axis_values.end(), r.axis_value) == axis_values.end())
      axis_values.push_back(r.axis_value);
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
      schemes.push_back(r.scheme);
  }
  std::sort(axis_values.begin(), axis_values.end());

  // Mean over feasible rows; NaN when no seed was feasible.
  auto mean_of = [&](Scheme sc, double v, auto&& field) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows) {
      if (r.scheme == sc && r.axis_value == v && r.feasible) {
        sum += field(r);
        ++n;
      }
    }
    return n ? sum / n : std::nan("");
  };

  std::vector<svg::Series> series;
  for (Scheme sc : schemes) {
    svg::Series s{std::string(to_string(sc)), axis_values, {}};
    for (double v : axis_values) {
      s.y.push_back(mean_of(sc, v, [](const ResultRow& r) { return r.throughput_bps / 1e6; }));
    }
    series.push_back(std::move(s));
  }
  const std::string label(axis_label);
  written.push_back(dir / "throughput.svg");
  write_file(written.back(),
             svg::line_chart(series, {"Network throughput", label, "throughput (Mbit/s)"}));

  const Scheme slicing_scheme =
      std::find(schemes.begin(), schemes.end(), Scheme::Proposed) != schemes.end()
          ? Scheme::Proposed
          : schemes.front();
  std::vector<std::string> categories;
  std::vector<std::vector<double>> layers(3);
  for (double v : axis_values) {
    categories.push_back(fmt_double(v));
    layers[0].push_back(mean_of(slicing_scheme, v, [](const ResultRow& r) { return r.slicing.beta1; }));
    layers[1].push_back(mean_of(slicing_scheme, v, [](const ResultRow& r) { return r.slicing.beta2; }));
    layers[2].push_back(mean_of(slicing_scheme, v, [](const ResultRow& r) { return r.slicing.beta_w; }));
  }
  written.push_back(dir / "slicing.svg");
  write_file(written.back(),
             svg::stacked_bars(categories, {"beta1", "beta2", "beta_w"}, layers,
                               {"Slicing ratios (" + std::string(to_string(slicing_scheme)) + ")",
                                label, "fraction of spectrum"}));
  return written;
}

}  // namespace avslice
