#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edlab/errors.hpp"
#include "edlab/experiments.hpp"
#include "edlab/report.hpp"
#include "json.hpp"

namespace {

using edlab::ConfigError;
using edlab::Outcome;
using nlohmann::json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void reject_unknown_keys(const json& cfg, const std::set<std::string>& allowed) {
  for (const auto& item : cfg.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown config key: " + item.key());
}

template <typename T>
void read(const json& cfg, const char* key, T& into) {
  if (cfg.contains(key)) into = cfg.at(key).get<T>();
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0)) throw ConfigError(std::string(key) + " must be positive");
}

const std::set<std::string> kCommonKeys = {"experiment", "preset", "output"};

Outcome dispatch(const json& cfg) {
  const std::string exp = cfg.at("experiment").get<std::string>();
  std::set<std::string> allowed = kCommonKeys;

  if (exp == "scalar-elim") {
    edlab::ScalarElimConfig c;
    allowed.insert({"levels", "box_length", "cfl", "horizon", "e", "m",
                    "phi_amp", "phidot_amp", "b1_amp", "b1dot_amp",
                    "elim_steps", "elim_dt_factor"});
    reject_unknown_keys(cfg, allowed);
    read(cfg, "levels", c.levels);
    read(cfg, "box_length", c.box_length);
    read(cfg, "cfl", c.cfl);
    read(cfg, "horizon", c.horizon);
    read(cfg, "e", c.e);
    read(cfg, "m", c.m);
    read(cfg, "phi_amp", c.phi_amp);
    read(cfg, "phidot_amp", c.phidot_amp);
    read(cfg, "b1_amp", c.b1_amp);
    read(cfg, "b1dot_amp", c.b1dot_amp);
    read(cfg, "elim_steps", c.elim_steps);
    read(cfg, "elim_dt_factor", c.elim_dt_factor);
    require_positive(c.box_length, "box_length");
    require_positive(c.cfl, "cfl");
    require_positive(c.horizon, "horizon");
    if (c.levels.size() < 2) throw ConfigError("levels needs >= 2 entries");
    return run_scalar_elim(c);
  }
  if (exp == "dirac-elim") {
    edlab::DiracIdentityConfig ci;
    edlab::DiracElimConfig ce;
    allowed.insert({"levels", "identity_levels", "seeds", "seed", "box_length",
                    "cfl", "dt_over_h", "bg_amp", "bg_omega", "wave_amp",
                    "psi_amp"});
    reject_unknown_keys(cfg, allowed);
    read(cfg, "identity_levels", ci.levels);
    read(cfg, "seeds", ci.seeds);
    read(cfg, "box_length", ci.box_length);
    read(cfg, "cfl", ci.cfl);
    read(cfg, "levels", ce.levels);
    read(cfg, "seed", ce.seed);
    read(cfg, "box_length", ce.box_length);
    read(cfg, "dt_over_h", ce.dt_over_h);
    read(cfg, "bg_amp", ce.bg_amp);
    read(cfg, "bg_omega", ce.bg_omega);
    read(cfg, "wave_amp", ce.wave_amp);
    read(cfg, "psi_amp", ce.psi_amp);
    require_positive(ce.box_length, "box_length");
    require_positive(ce.dt_over_h, "dt_over_h");
    require_positive(ce.bg_omega, "bg_omega");
    if (ci.seeds < 1) throw ConfigError("seeds must be >= 1");
    Outcome out = run_dirac_identity(ci);
    out.merge(run_dirac_elim(ce));
    return out;
  }
  if (exp == "spinor-reconstruct") {
    edlab::SpinorReconstructConfig c;
    allowed.insert({"levels", "seed", "box_length", "center_time", "e2",
                    "psi_amp", "lower_amp", "a_wave_amp", "e_bg"});
    reject_unknown_keys(cfg, allowed);
    read(cfg, "levels", c.levels);
    read(cfg, "seed", c.seed);
    read(cfg, "box_length", c.box_length);
    read(cfg, "center_time", c.center_time);
    read(cfg, "e2", c.e2);
    read(cfg, "psi_amp", c.psi_amp);
    read(cfg, "lower_amp", c.lower_amp);
    read(cfg, "a_wave_amp", c.a_wave_amp);
    read(cfg, "e_bg", c.e_bg);
    require_positive(c.box_length, "box_length");
    require_positive(c.center_time, "center_time");
    require_positive(c.e2, "e2");
    return run_spinor_reconstruct(c);
  }
  if (exp == "carleman") {
    edlab::CarlemanConfig c;
    allowed.insert({"rotor_xi", "rotor_T", "rotor_nmax", "nonlinear_nmax",
                    "nonlinear_xi", "nonlinear_lambda", "T", "dt",
                    "dt_classical", "scales", "seed"});
    reject_unknown_keys(cfg, allowed);
    read(cfg, "rotor_xi", c.rotor_xi);
    read(cfg, "rotor_T", c.rotor_T);
    read(cfg, "rotor_nmax", c.rotor_nmax);
    read(cfg, "nonlinear_nmax", c.nonlinear_nmax);
    read(cfg, "nonlinear_xi", c.nonlinear_xi);
    read(cfg, "nonlinear_lambda", c.nonlinear_lambda);
    read(cfg, "T", c.T);
    read(cfg, "dt", c.dt);
    read(cfg, "dt_classical", c.dt_classical);
    read(cfg, "scales", c.scales);
    read(cfg, "seed", c.seed);
    require_positive(c.dt, "dt");
    require_positive(c.dt_classical, "dt_classical");
    if (c.rotor_nmax < 1) throw ConfigError("rotor_nmax must be >= 1");
    return run_carleman(c);
  }
  if (exp == "convergence") {
    allowed.insert({"errors", "h"});
    reject_unknown_keys(cfg, allowed);
    std::vector<double> errors = cfg.at("errors").get<std::vector<double>>();
    Outcome out;
    edlab::ConvergenceReport rep;
    if (cfg.contains("h")) {
      std::vector<double> h = cfg.at("h").get<std::vector<double>>();
      rep = edlab::convergence_report(errors, h);
      for (std::size_t i = 0; i < errors.size(); ++i)
        out.rows.push_back({"convergence", static_cast<int>(i), h[i], 0.0,
                            "error", errors[i]});
    } else {
      rep = edlab::convergence_report(errors);
      for (std::size_t i = 0; i < errors.size(); ++i)
        out.rows.push_back({"convergence", static_cast<int>(i), 0.0, 0.0,
                            "error", errors[i]});
    }
    for (std::size_t i = 0; i < rep.pair_orders.size(); ++i)
      out.rows.push_back({"convergence", static_cast<int>(i), 0.0, 0.0,
                          "pair_order", rep.pair_orders[i]});
    out.rows.push_back({"convergence", 0, 0.0, 0.0, "mean_order",
                        rep.mean_order});
    out.checks.push_back({"monotone_decrease", rep.monotone ? 1.0 : 0.0,
                          "informational", true});
    return out;
  }
  throw ConfigError("unknown experiment: " + exp);
}

void write_artifacts(const Outcome& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir + "/results.csv");
    csv << "experiment,level,h,dt,metric,value,wall_time\n";
    for (const auto& r : out.rows)
      csv << r.experiment << "," << r.level << "," << num(r.h) << ","
          << num(r.dt) << "," << r.metric << "," << num(r.value) << ","
          << num(out.wall_time) << "\n";
  }
  {
    json summary;
    for (const auto& c : out.checks)
      summary[c.name] = {
          {"measured", c.measured}, {"bound", c.bound}, {"pass", c.pass}};
    std::ofstream js(dir + "/summary.json");
    js << summary.dump(2) << "\n";
  }
}

int cmd_run(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot open config: " + config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!cfg.contains("experiment"))
    throw ConfigError("missing required key: experiment");

  std::string output = ".";
  if (cfg.contains("output")) output = cfg.at("output").get<std::string>();
  if (const char* env = std::getenv("EDLAB_OUTPUT_DIR")) output = env;

  if (cfg.contains("preset")) {
    // presets are the documented defaults; any other name is rejected
    static const std::map<std::string, std::set<std::string>> presets = {
        {"scalar-elim", {"smoke"}},
        {"dirac-elim", {"default"}},
        {"spinor-reconstruct", {"default"}},
        {"carleman", {"linear-rotor", "nonlinear", "default"}},
        {"convergence", {}},
    };
    const std::string exp = cfg.at("experiment").get<std::string>();
    const std::string preset = cfg.at("preset").get<std::string>();
    auto it = presets.find(exp);
    if (it == presets.end() || !it->second.count(preset))
      throw ConfigError("unknown preset for " + exp + ": " + preset);
  }

  Outcome out = dispatch(cfg);
  write_artifacts(out, output);

  for (const auto& c : out.checks)
    std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name
              << " measured=" << c.measured << " bound=" << c.bound << "\n";
  std::cout << (out.passed() ? "ALL CHECKS PASSED" : "CHECK FAILURES") << " ("
            << out.checks.size() << " checks, " << out.rows.size()
            << " rows, " << out.wall_time << " s)\n";
  return out.passed() ? 0 : 1;
}

int cmd_list_presets() {
  std::cout << "scalar-elim:smoke          1+1D elimination equivalence, "
               "N in {64,128,256}\n"
            << "dirac-elim:default         identity chain + component "
               "elimination, 8^3..16^3\n"
            << "spinor-reconstruct:default third-derivative reconstruction "
               "pipeline, 16^3..32^3\n"
            << "carleman:linear-rotor      coherent embedding of the linear "
               "rotor, N_max 8\n"
            << "carleman:nonlinear         truncation study, N_max in "
               "{4,8,12}\n"
            << "carleman:default           full Carleman battery\n";
  return 0;
}

int cmd_report(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot open CSV: " + csv_path);
  std::string line;
  std::getline(in, line);  // header
  struct Series {
    std::vector<double> h, value;
  };
  std::vector<std::string> order;
  std::map<std::string, Series> series;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string exp, level, h, dt, metric, value;
    std::getline(ss, exp, ',');
    std::getline(ss, level, ',');
    std::getline(ss, h, ',');
    std::getline(ss, dt, ',');
    std::getline(ss, metric, ',');
    std::getline(ss, value, ',');
    const std::string key = exp + "/" + metric;
    if (!series.count(key)) order.push_back(key);
    series[key].h.push_back(std::stod(h));
    series[key].value.push_back(std::stod(value));
  }
  for (const auto& key : order) {
    const Series& s = series.at(key);
    std::cout << key << ":";
    for (double v : s.value) std::cout << " " << v;
    bool refinable = s.value.size() >= 2;
    for (std::size_t i = 0; refinable && i < s.value.size(); ++i)
      if (s.value[i] <= 0.0 || s.h[i] <= 0.0) refinable = false;
    for (std::size_t i = 0; refinable && i + 1 < s.h.size(); ++i)
      if (s.h[i + 1] >= s.h[i]) refinable = false;
    if (refinable) {
      auto rep = edlab::convergence_report(s.value, s.h);
      std::cout << "  [" << edlab::format_report(rep) << "]";
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electrodynamics elimination and Carleman embedding lab"};
  app.require_subcommand(1);

  std::string config_path, csv_path;
  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();
  CLI::App* lp = app.add_subcommand("list-presets", "list named presets");
  CLI::App* rep = app.add_subcommand("report", "convergence table from CSV");
  rep->add_option("results", csv_path, "results.csv produced by run")
      ->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(config_path);
    if (lp->parsed()) return cmd_list_presets();
    if (rep->parsed()) return cmd_report(csv_path);
  } catch (const edlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
