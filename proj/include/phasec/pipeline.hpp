#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasec/dynamics.hpp"
#include "phasec/husimi.hpp"
#include "phasec/measures.hpp"
#include "phasec/models.hpp"

namespace phasec {

// Invalid run configuration; field names the offending key.
class ConfigError : public DomainError {
 public:
  ConfigError(std::string field, const std::string& what)
      : DomainError(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Model { lmg, kitagawa_ueda };
enum class Route { exact, wigner_prop, weyl_prop };

std::string to_string(Model m);
std::string to_string(Route r);
Model parse_model(const std::string& s);
Route parse_route(const std::string& s);

struct OutputSet {
  bool wigner = true, husimi = true, moments = true, criteria = true, entropies = true, weyl = false;

  static OutputSet parse(const std::vector<std::string>& names);
  std::vector<std::string> names() const;
};

struct RunConfig {
  Model model = Model::lmg;
  int n_spins = 20;  // spin j = n_spins / 2
  double h = -0.1, gamma = 0.2, lambda = 1.0, field_scale = 1.0;
  bool full_form = false;
  double chi = 1.0;
  CoherentParams initial{1.5707963267948966, 0.0};
  double t0 = 0.0, t1 = 10.0, dt = 0.05;
  std::vector<double> snapshots;
  OutputSet outputs;
  std::string output_dir = "phasec_out";
  Route route = Route::weyl_prop;
  bool verify_route = false;
  std::string preset;

  // throws ConfigError naming the field
  void validate() const;
  SpinSpace space() const { return SpinSpace::from_two_j(n_spins); }
  Mat hamiltonian() const;
  // t0 + k dt for k = 0..floor((t1-t0)/dt), each rounded to 1e-12
  std::vector<double> time_grid() const;
};

std::vector<std::string> preset_names();
// throws ConfigError for unknown names
RunConfig preset(const std::string& name);

struct Frame {
  double t = 0.0;
  MomentReport moments;
  CriteriaReport criteria;
  std::optional<EntropyReport> entropy;
  double fidelity = 0.0;
  double route_deviation = kUndefined;  // max |W_route - W_exact| when cross-checked
  double husimi_min = kUndefined, husimi_max = kUndefined, husimi_norm_error = kUndefined;
};

struct Snapshot {
  double t = 0.0;
  PhaseGrid wigner, husimi, weyl;
};

struct RunResult {
  std::vector<Frame> frames;
  std::vector<Snapshot> snapshots;
  double max_route_deviation = kUndefined;
  double husimi_min = kUndefined, husimi_max = kUndefined, husimi_norm_error = kUndefined;
};

// Holds everything that does not depend on time: kernels, Hamiltonian, mapped
// moment operators, smoothing kernel and the propagator for each enabled route.
class Simulation {
 public:
  explicit Simulation(RunConfig cfg, Exec exec = Exec::parallel);

  const RunConfig& config() const { return cfg_; }
  const KernelSet& kernels() const { return ks_; }
  const Mat& hamiltonian() const { return H_; }
  const DensityState& initial_state() const { return rho0_; }
  const SmoothingKernel& smoothing() const;

  // builds the propagator for r if it is not there yet
  void enable_route(Route r);
  PhaseGrid wigner_at(double t, Route r) const;
  PhaseGrid wigner_at(double t) const { return wigner_at(t, cfg_.route); }
  PhaseGrid weyl_at(double t) const;
  DensityState state_from_wigner(const PhaseGrid& w) const;

  Frame frame(double t) const;
  RunResult run() const;

 private:
  RunConfig cfg_;
  Exec exec_;
  int n_spins_;
  KernelSet ks_;
  Generators gens_;
  Mat H_;
  DensityState rho0_;
  PhaseGrid w0_, weyl0_;
  MappedMoments mapped_;
  std::optional<SmoothingKernel> smoothing_;
  std::optional<ExactEvolver> exact_;
  std::optional<Propagator> wigner_prop_, weyl_prop_;
};

// contiguous runs of grid points where a flag holds, as [t_start, t_end]
struct Window {
  double start, end;
};
std::vector<Window> violation_windows(const std::vector<double>& t, const std::vector<bool>& flag);
double flag_agreement(const std::vector<bool>& a, const std::vector<bool>& b);
// index of the first strict interior local minimum (maximum), or -1
int first_local_min(const std::vector<double>& v);
int first_local_max(const std::vector<double>& v);

struct SweepRow {
  double gamma = 0.0;
  RunResult result;
  double min_sorensen_z = kUndefined, min_toth_z = kUndefined, min_squeezing_z_x = kUndefined;
  double sorensen_toth_agreement = 0.0, sorensen_squeezing_agreement = 0.0;
  std::vector<Window> sorensen_windows, toth_windows, squeezing_windows;
};

// One LMG run per gamma; entropies and grids are skipped.
std::vector<SweepRow> sweep_gamma(const RunConfig& base, const std::vector<double>& gammas,
                                  Exec exec = Exec::parallel);

}  // namespace phasec
