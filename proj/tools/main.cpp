#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avslice/baselines.hpp"
#include "avslice/config.hpp"
#include "avslice/harness.hpp"
#include "avslice/model.hpp"
#include "avslice/serialization.hpp"
#include "json.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kConfigError = 2;

using namespace avslice;

int cmd_run(const std::string& config_path) {
  const SimulationConfig cfg = load_config(config_path);
  const Scenario s = cfg.build_scenario();
  nlohmann::json out;
  out["seed"] = cfg.road.rng_seed;
  out["vehicles"] = s.vehicle_count();
  out["results"] = nlohmann::json::array();
  bool proposed_requested = false, proposed_ok = false, any_ok = false;
  for (Scheme sc : cfg.schemes) {
    const SchemeResult r = run_scheme(sc, s, cfg.traffic, cfg.aggregate_spectrum_hz, cfg.acs);
    out["results"].push_back(nlohmann::json::parse(scheme_result_to_json(r)));
    any_ok = any_ok || r.feasible;
    if (sc == Scheme::Proposed) {
      proposed_requested = true;
      proposed_ok = r.feasible;
    }
  }
  std::cout << out.dump(2) << '\n';
  const bool ok = proposed_requested ? proposed_ok : any_ok;
  return ok ? kOk : kInfeasible;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::string item = list.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw ConfigError("bad axis value '" + item + "'");
      values.push_back(v);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name,
              const std::string& values, int seeds, const std::string& out_dir, bool plots,
              const std::string& format) {
  ExperimentPlan plan;
  plan.base = load_config(config_path);
  const auto axis = axis_from_string(axis_name);
  if (!axis) throw ConfigError("unknown axis '" + axis_name + "'");
  plan.axis = *axis;
  plan.values = parse_values(values);
  plan.replications = seeds;
  plan.base_seed = plan.base.road.rng_seed;
  plan.schemes = plan.base.schemes;
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  plan.validate();

  const auto rows = run_plan(plan);
  const auto written =
      emit_outputs(rows, out_dir, format == "csv" ? OutputFormat::Csv : OutputFormat::Json,
                   plots && !rows.empty(), axis_name);
  std::size_t feasible = 0;
  for (const auto& r : rows) feasible += r.feasible ? 1 : 0;
  std::cerr << rows.size() << " rows (" << feasible << " feasible)\n";
  for (const auto& p : written) std::cout << p.string() << '\n';
  return kOk;
}

int cmd_validate(const std::string& config_path) {
  const SimulationConfig cfg = load_config(config_path);
  const Scenario s = cfg.build_scenario();
  int failures = 0;
  auto check = [&](const char* name, bool ok, const std::string& detail = {}) {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << '\n';
    failures += ok ? 0 : 1;
  };

  const std::string snapshot = scenario_to_json(s);
  check("scenario_json_round_trip",
        scenario_to_json(scenario_from_json(snapshot)) == snapshot);

  bool coverage_ok = true;
  for (std::size_t k = 0; k < s.vehicle_count(); ++k) {
    coverage_ok = coverage_ok && s.serving_enb(k) < s.enb_count();
  }
  check("every_vehicle_in_an_enb_cell", coverage_ok);

  const auto floors = rate_floors(s, cfg.traffic);
  for (Scheme sc : cfg.schemes) {
    const SchemeResult r = run_scheme(sc, s, cfg.traffic, cfg.aggregate_spectrum_hz, cfg.acs);
    const std::string tag(to_string(sc));
    check((tag + "_slicing_on_simplex").c_str(), r.slicing.on_simplex(1e-7));
    bool powers_ok = r.powers.size() == s.ap_count();
    for (double p : r.powers) powers_ok = powers_ok && p >= 0.0 && p <= cfg.acs.p_max_w + 1e-9;
    check((tag + "_power_box").c_str(), powers_ok);
    if (!r.feasible) {
      std::cout << "SKIP " << tag << "_qos (scheme infeasible)\n";
      continue;
    }
    double sum = 0.0;
    std::size_t below = 0;
    for (std::size_t k = 0; k < r.rates.size(); ++k) {
      sum += r.rates[k];
      below += r.rates[k] < floors[k] * (1.0 - 1e-6) ? 1 : 0;
    }
    check((tag + "_qos_floors").c_str(), below == 0, std::to_string(below) + " below floor");
    check((tag + "_throughput_is_rate_sum").c_str(),
          std::abs(sum - r.throughput_bps) <= 1e-6 * std::max(1.0, sum));
  }
  return failures == 0 ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum slicing and power control for vehicular networks"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Solve one scenario and print the solution as JSON");
  run->add_option("--config", config_path, "JSON configuration file")->required();

  std::string axis, values, out_dir, format = "csv";
  int seeds = 5;
  bool plots = false;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write results");
  sweep->add_option("--config", config_path, "JSON configuration file")->required();
  sweep->add_option("--axis", axis, "spectrum_mhz | sensitive_prob | density")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")->required();
  sweep->add_option("--seeds", seeds, "Replications per axis value")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--format", format, "csv | json");
  sweep->add_flag("--plots", plots, "Also write SVG charts");

  auto* validate = app.add_subcommand("validate", "Run the invariant suite on a configuration");
  validate->add_option("--config", config_path, "JSON configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*sweep) return cmd_sweep(config_path, axis, values, seeds, out_dir, plots, format);
    if (*validate) return cmd_validate(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  }
  return kOk;
}
