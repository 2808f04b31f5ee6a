#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "phasec/io.hpp"
#include "phasec/pipeline.hpp"
#include "phasec/verify.hpp"

using namespace phasec;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIntegrity = 3;

struct RunFlags {
  std::optional<std::string> preset, config, model, route, out;
  std::optional<int> nspins;
  std::optional<double> j, h, gamma, lambda, field_scale, chi, theta, phi, t0, t1, dt;
  std::optional<std::vector<double>> snapshots;
  std::optional<std::vector<std::string>> outputs;
  bool full_form = false, verify_route = false;
};

void add_spin_flags(CLI::App* app, RunFlags& f) {
  app->set_help_flag("--help", "print help");
  app->add_option("--nspins", f.nspins, "number of spins n (j = n/2)");
  app->add_option("--j", f.j, "spin quantum number j (overrides --nspins)");
  app->add_option("--theta", f.theta, "initial coherent state polar angle");
  app->add_option("--phi", f.phi, "initial coherent state azimuth");
  app->add_option("--out", f.out, std::string("output directory (else $") + kOutDirEnv + ")");
}

void add_run_flags(CLI::App* app, RunFlags& f, bool gamma_scalar) {
  add_spin_flags(app, f);
  app->add_option("--preset", f.preset, "fig1b, figb1 or appc");
  app->add_option("--config", f.config, "JSON file whose keys mirror the run configuration");
  app->add_option("--model", f.model, "lmg or kitagawa-ueda");
  app->add_option("--h", f.h, "LMG field");
  if (gamma_scalar) app->add_option("--gamma", f.gamma, "LMG anisotropy");
  app->add_option("--lambda", f.lambda, "LMG coupling");
  app->add_option("--field-scale", f.field_scale, "LMG field term is -field_scale*h*Jz");
  app->add_flag("--full-form", f.full_form, "LMG with ladder-operator form and constant shift");
  app->add_option("--chi", f.chi, "twisting strength");
  app->add_option("--t0", f.t0);
  app->add_option("--t1", f.t1);
  app->add_option("--dt", f.dt);
  app->add_option("--snapshots", f.snapshots, "grid snapshot times")->delimiter(',');
  app->add_option("--outputs", f.outputs, "wigner,husimi,moments,criteria,entropies,weyl")->delimiter(',');
  app->add_option("--route", f.route, "exact, wigner-prop or weyl-prop");
  app->add_flag("--verify-route", f.verify_route, "cross-check every frame against exact evolution");
}

int two_j_of(double j) {
  if (!(j >= 0.0) || std::abs(2 * j - std::round(2 * j)) > 1e-12)
    throw ConfigError("j", "must be a non-negative multiple of 1/2");
  return static_cast<int>(std::lround(2 * j));
}

RunConfig build_config(const RunFlags& f) {
  RunConfig c = f.preset ? preset(*f.preset) : RunConfig{};
  if (f.config) apply_json(c, load_json_file(*f.config));
  if (f.model) c.model = parse_model(*f.model);
  if (f.nspins) c.n_spins = *f.nspins;
  if (f.j) c.n_spins = two_j_of(*f.j);
  if (f.h) c.h = *f.h;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.lambda) c.lambda = *f.lambda;
  if (f.field_scale) c.field_scale = *f.field_scale;
  if (f.full_form) c.full_form = true;
  if (f.chi) c.chi = *f.chi;
  if (f.theta) c.initial.theta = *f.theta;
  if (f.phi) c.initial.phi = *f.phi;
  if (f.t0) c.t0 = *f.t0;
  if (f.t1) c.t1 = *f.t1;
  if (f.dt) c.dt = *f.dt;
  if (f.snapshots) c.snapshots = *f.snapshots;
  if (f.outputs) c.outputs = OutputSet::parse(*f.outputs);
  if (f.route) c.route = parse_route(*f.route);
  if (f.verify_route) c.verify_route = true;
  c.output_dir = resolve_output_dir(f.out, c.output_dir);
  c.validate();
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_evolve(const RunFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig c = build_config(f);
  const Simulation sim(c);
  const RunResult r = sim.run();
  OutputDir out(c.output_dir);
  write_run(c, r, out);
  json checks;
  checks["route_max_deviation"] = r.max_route_deviation;
  checks["husimi_min"] = r.husimi_min;
  checks["husimi_max"] = r.husimi_max;
  checks["husimi_norm_error"] = r.husimi_norm_error;
  if (sim.config().outputs.husimi || sim.config().outputs.entropies)
    checks["theta_convention"] = to_string(sim.smoothing().convention);
  out.write_manifest("evolve", config_to_json(c), seconds_since(start), checks);
  std::cout << "wrote " << out.files().size() << " files and manifest.json to " << c.output_dir << "\n";
  return 0;
}

int cmd_sweep(const RunFlags& f, std::optional<std::vector<double>> gammas) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig c = build_config(f);
  std::vector<double> g = gammas ? *gammas : std::vector<double>{};
  if (!gammas && c.preset == "appc") g = {0.5, 0.948};
  for (double v : g)
    if (!std::isfinite(v) || std::abs(v) > 1.0) throw ConfigError("gamma", "values must lie in [-1, 1]");
  const std::vector<SweepRow> rows = sweep_gamma(c, g);
  OutputDir out(c.output_dir);
  for (const auto& row : rows)
    out.write("criteria_gamma" + format_number(row.gamma) + ".csv", criteria_table(row.result.frames));
  out.write("sweep_summary.csv", sweep_summary_table(rows));
  out.write("sweep_windows.csv", sweep_windows_table(rows));
  json cfg = config_to_json(c);
  cfg["gammas"] = g;
  out.write_manifest("sweep-gamma", cfg, seconds_since(start));
  std::cout << "swept " << rows.size() << " gamma values into " << c.output_dir << "\n";
  return 0;
}

int cmd_coherent(const RunFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig c;
  if (f.nspins) c.n_spins = *f.nspins;
  if (f.j) c.n_spins = two_j_of(*f.j);
  if (f.theta) c.initial.theta = *f.theta;
  if (f.phi) c.initial.phi = *f.phi;
  c.output_dir = resolve_output_dir(f.out, c.output_dir);
  c.validate();
  validate(c.initial);
  const KernelSet ks = build_kernels(c.space());
  const PhaseGrid w = coherent_wigner(c.initial, ks);
  const SmoothingKernel sk = build_smoothing(ks);
  OutputDir out(c.output_dir);
  out.write("coherent_wigner.csv", wigner_grid_table(w));
  out.write("coherent_husimi.csv", wigner_grid_table(husimi_from_wigner(w, sk)));
  out.write("coherent_weyl.csv", weyl_grid_table(coherent_weyl(c.initial, c.space())));
  json cfg{{"n_spins", c.n_spins}, {"j", 0.5 * c.n_spins}, {"theta", c.initial.theta},
           {"phi", c.initial.phi}, {"output_dir", c.output_dir}};
  out.write_manifest("coherent-wigner", cfg, seconds_since(start),
                     {{"theta_convention", to_string(sk.convention)}});
  std::cout << "wrote coherent-state grids to " << c.output_dir << "\n";
  return 0;
}

int cmd_ku(const RunFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig c = preset("figb1");
  if (f.nspins) c.n_spins = *f.nspins;
  if (f.j) c.n_spins = two_j_of(*f.j);
  if (f.chi) c.chi = *f.chi;
  if (f.theta) c.initial.theta = *f.theta;
  if (f.phi) c.initial.phi = *f.phi;
  if (f.t0) c.t0 = *f.t0;
  if (f.t1) c.t1 = *f.t1;
  if (f.dt) c.dt = *f.dt;
  c.output_dir = resolve_output_dir(f.out, c.output_dir);
  if (c.n_spins < 1) throw ConfigError("j", "must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("dt", "must be positive");
  if (c.t1 < c.t0) throw ConfigError("t1", "must not be before t0");
  validate(c.initial);
  const KuParams kp{c.chi, c.n_spins};
  std::vector<Frame> frames;
  CsvTable dev({"t", "tau", "max_deviation_vs_matrix"});
  for (double t : c.time_grid()) {
    Frame fr;
    fr.t = t;
    fr.moments = ku_analytic_moments(kp, c.initial, c.chi * t);
    fr.moments.t = t;
    frames.push_back(fr);
    dev.add({t, c.chi * t, c.chi == 0.0 ? 0.0 : ku_numeric_vs_analytic(kp, c.initial, {c.chi * t}).max_deviation});
  }
  OutputDir out(c.output_dir);
  out.write("ku_moments.csv", moments_table(frames));
  out.write("ku_check.csv", dev);
  json cfg{{"j", 0.5 * c.n_spins}, {"chi", c.chi}, {"theta", c.initial.theta}, {"phi", c.initial.phi},
           {"t0", c.t0}, {"t1", c.t1}, {"dt", c.dt}, {"output_dir", c.output_dir}};
  out.write_manifest("ku-analytic", cfg, seconds_since(start));
  std::cout << "wrote " << frames.size() << " analytic frames to " << c.output_dir << "\n";
  return 0;
}

int cmd_verify(const std::string& level) {
  if (level != "fast" && level != "full") throw ConfigError("level", "must be fast or full");
  const auto results = run_verify(level == "full" ? VerifyLevel::full : VerifyLevel::fast);
  std::cout << render_verify(results);
  for (const auto& r : results)
    if (!r.passed) return kExitIntegrity;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete phase-space simulation of collective spin systems"};
  // -h is taken by the field flag --h
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  RunFlags evolve_f, sweep_f, coherent_f, ku_f;
  std::optional<std::vector<double>> gammas;
  std::string level = "fast";

  auto* evolve = app.add_subcommand("evolve", "time evolution with CSV time series and grid snapshots");
  add_run_flags(evolve, evolve_f, true);
  auto* sweep = app.add_subcommand("sweep-gamma", "criteria series for a list of anisotropies");
  add_run_flags(sweep, sweep_f, false);
  sweep->add_option("--gamma", gammas, "comma separated anisotropies")->delimiter(',');
  auto* coherent = app.add_subcommand("coherent-wigner", "Wigner, Husimi and Weyl grids of a coherent state");
  add_spin_flags(coherent, coherent_f);
  auto* ku = app.add_subcommand("ku-analytic", "closed-form one-axis-twisting moments");
  add_spin_flags(ku, ku_f);
  ku->add_option("--chi", ku_f.chi);
  ku->add_option("--t0", ku_f.t0);
  ku->add_option("--t1", ku_f.t1);
  ku->add_option("--dt", ku_f.dt);
  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  verify->set_help_flag("--help", "print help");
  verify->add_option("--level", level, "fast or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evolve) return cmd_evolve(evolve_f);
    if (*sweep) return cmd_sweep(sweep_f, gammas);
    if (*coherent) return cmd_coherent(coherent_f);
    if (*ku) return cmd_ku(ku_f);
    if (*verify) return cmd_verify(level);
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
