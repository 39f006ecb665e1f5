#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "nlslab/experiments.hpp"
#include "nlslab/profiles.hpp"
#include "nlslab/spectral.hpp"

namespace {

using namespace nlslab;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  Json j;
  in >> j;
  return j;
}

ExperimentConfig load_config(const std::string& config_path, Experiment fallback, bool explore) {
  ExperimentConfig cfg;
  if (config_path.empty()) {
    cfg = default_config(fallback);
  } else {
    Json j = load_json(config_path);
    if (!j.contains("experiment")) j["experiment"] = experiment_name(fallback);
    cfg = ExperimentConfig::from_json(j);
  }
  if (explore) cfg.explore = true;
  return cfg;
}

int run_experiment_command(Experiment e, const std::string& config_path, const std::string& out,
                           bool explore) {
  const ExperimentConfig cfg = load_config(config_path, e, explore);
  const OutDir out_dir = out.empty() ? OutDir{} : OutDir{std::filesystem::path(out)};
  const ExperimentReport report = run_experiment(cfg, out_dir);
  std::cout << report.to_json().dump(2) << "\n";
  return report.pass ? 0 : 1;
}

int run_simulate(const std::string& config_path, const std::string& out) {
  const ExperimentConfig cfg = load_config(config_path, Experiment::decay, false);
  const GridSpec grid(cfg.grid_n, cfg.half_width);
  const ComplexField phi = build_datum(cfg, grid);
  const Trajectory traj = evolve(phi, cfg.nonlinearity(), cfg.integrator);
  const ExponentConfig ec = exponent_config(cfg.alpha, cfg.p);

  Json j;
  j["records"] = traj.times.size();
  j["t_end"] = traj.times.back();
  j["final_mass"] = traj.diagnostics.back().mass;
  j["leakage_flagged"] = traj.leakage_flagged;

  if (!out.empty()) {
    const std::filesystem::path dir(out);
    std::filesystem::create_directories(dir / "fields");
    std::vector<NormsRow> rows;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      NormsRow row;
      row.t = traj.times[i];
      row.u_dual = lp_norm(traj.states[i], ec.p_dual);
      row.v_twisted = lp_norm(free_propagate(traj.states[i], -traj.times[i]), cfg.p);
      row.mass = traj.diagnostics[i].mass;
      row.leakage = traj.diagnostics[i].leakage;
      rows.push_back(row);
      write_field(dir / "fields" / ("state_" + std::to_string(i) + ".bin"), traj.states[i]);
    }
    write_norms_csv(dir / "norms.csv", rows);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

ExperimentConfig picard_fallback() {
  ExperimentConfig cfg = default_config(Experiment::decay);
  cfg.alpha = Rational(3);
  cfg.p = Rational(2);
  cfg.family = DataFamily::gaussian;
  cfg.amplitude = 0.25;
  cfg.grid_n = 2048;
  cfg.half_width = 20.0;
  cfg.picard = PicardOptions{0.5, 128, 1e-10, 40, false, false};
  return cfg;
}

int run_picard_command(const std::string& config_path, const std::string& out, bool explore) {
  ExperimentConfig cfg = picard_fallback();
  if (!config_path.empty()) {
    Json j = load_json(config_path);
    if (!j.contains("experiment")) j["experiment"] = "decay";
    cfg = ExperimentConfig::from_json(j);
  }
  if (explore) cfg.explore = true;
  const GridSpec grid(cfg.grid_n, cfg.half_width);
  const ComplexField phi = build_datum(cfg, grid);
  PicardOptions opts = cfg.picard;
  opts.enforce_hypotheses = !cfg.explore;
  const PicardResult result =
      picard_solve(phi, cfg.nonlinearity(), exponent_config(cfg.alpha, cfg.p), opts);

  const Json j = xt_report_to_json(result.report);
  if (!out.empty()) {
    const std::filesystem::path dir(out);
    std::filesystem::create_directories(dir / "fields");
    std::ofstream rj(dir / "picard_report.json");
    rj << j.dump(2) << "\n";
    for (std::size_t i = 0; i < result.trajectory.times.size(); ++i)
      write_field(dir / "fields" / ("twisted_" + std::to_string(i) + ".bin"),
                  result.trajectory.v_states[i]);
  }
  std::cout << j.dump(2) << "\n";
  return result.report.converged ? 0 : 1;
}

int run_decompose(const std::string& config_path, const std::string& field_path,
                  const std::string& out) {
  const ExperimentConfig cfg = load_config(config_path, Experiment::continuation, false);
  if (!cfg.p0) throw std::runtime_error("decompose: config must set p0");
  ComplexField phi = field_path.empty()
                         ? build_datum(cfg, GridSpec(cfg.grid_n, cfg.half_width))
                         : read_field(field_path);
  const std::vector<double> sweep =
      cfg.sweep.size() < 2 ? std::vector<double>{2.0, 4.0, 8.0, 16.0} : cfg.sweep;
  const SplitReport report =
      verify_split(phi, cfg.p, *cfg.p0, cfg.alpha, sweep, cfg.integrator.t_end);

  const Json j = split_report_to_json(report);
  if (!out.empty()) {
    const std::filesystem::path dir(out);
    std::filesystem::create_directories(dir);
    std::ofstream rj(dir / "split_report.json");
    rj << j.dump(2) << "\n";
    for (double n : sweep) {
      const SplitDatum sd = amplitude_split(phi, cfg.p, *cfg.p0, n);
      write_field(dir / ("phi_N_" + format_double(n) + ".bin"), sd.phi_n);
      write_field(dir / ("psi_N_" + format_double(n) + ".bin"), sd.psi_n);
    }
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: numerical laboratory for 1D NLS with L^p data"};
  app.require_subcommand(1);

  std::string alpha_str = "3", p_str = "2";
  auto* exponents_cmd =
      app.add_subcommand("exponents", "print the exponent configuration and theorem report");
  exponents_cmd->add_option("--alpha", alpha_str, "nonlinearity power, e.g. 9/2");
  exponents_cmd->add_option("--p", p_str, "data integrability, e.g. 7/4");

  struct SubArgs {
    std::string config;
    std::string out;
    bool explore = false;
  };
  std::map<std::string, SubArgs> args;
  const std::vector<std::string> experiment_subs = {"decay",   "lifespan", "smoothing",
                                                    "persistence", "scatter",  "hatlp",
                                                    "continuation"};
  for (const std::string& name : experiment_subs) {
    auto* sub = app.add_subcommand(name, name + " experiment");
    auto& a = args[name];
    sub->add_option("--config", a.config, "experiment config JSON");
    sub->add_option("--out", a.out, "output directory (report.json, norms.csv, fields/)");
    sub->add_flag("--explore", a.explore, "run outside proven hypothesis ranges");
  }
  for (const std::string& name : {std::string("simulate"), std::string("picard"),
                                  std::string("decompose")}) {
    auto* sub = app.add_subcommand(name, name + " run");
    auto& a = args[name];
    sub->add_option("--config", a.config, "config JSON");
    sub->add_option("--out", a.out, "output directory");
    if (name == "picard") sub->add_flag("--explore", a.explore, "skip hypothesis enforcement");
  }
  std::string field_path;
  app.get_subcommand("decompose")->add_option("--field", field_path,
                                              "input field container (.bin)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exponents_cmd->parsed()) {
      const nlslab::Rational alpha = nlslab::Rational::parse(alpha_str);
      const nlslab::Rational p = nlslab::Rational::parse(p_str);
      nlslab::Json j;
      j["exponents"] = nlslab::exponent_config_to_json(nlslab::exponent_config(alpha, p));
      j["theorems"] = nlslab::applicability_to_json(nlslab::theorem_applicability(alpha, p));
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    for (const std::string& name : experiment_subs)
      if (app.get_subcommand(name)->parsed()) {
        const auto& a = args[name];
        return run_experiment_command(nlslab::experiment_from_name(name), a.config, a.out,
                                      a.explore);
      }
    if (app.get_subcommand("simulate")->parsed())
      return run_simulate(args["simulate"].config, args["simulate"].out);
    if (app.get_subcommand("picard")->parsed())
      return run_picard_command(args["picard"].config, args["picard"].out,
                                args["picard"].explore);
    if (app.get_subcommand("decompose")->parsed())
      return run_decompose(args["decompose"].config, field_path, args["decompose"].out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
