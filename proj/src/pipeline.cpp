#include "phasec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

namespace phasec {

namespace {

bool finite(double v) { return std::isfinite(v); }

double round12(double t) { return std::round(t * 1e12) / 1e12; }

template <class F>
void for_each_index(int count, Exec exec, F&& body) {
  // exceptions cannot leave an OpenMP region; keep the first one and rethrow
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (...) {
#pragma omp critical(phasec_for_each_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

std::string to_string(Model m) { return m == Model::lmg ? "lmg" : "kitagawa-ueda"; }

std::string to_string(Route r) {
  switch (r) {
    case Route::exact: return "exact";
    case Route::wigner_prop: return "wigner-prop";
    default: return "weyl-prop";
  }
}

Model parse_model(const std::string& s) {
  if (s == "lmg") return Model::lmg;
  if (s == "kitagawa-ueda" || s == "ku") return Model::kitagawa_ueda;
  throw ConfigError("model", "unknown model '" + s + "' (lmg, kitagawa-ueda)");
}

Route parse_route(const std::string& s) {
  if (s == "exact") return Route::exact;
  if (s == "wigner-prop") return Route::wigner_prop;
  if (s == "weyl-prop") return Route::weyl_prop;
  throw ConfigError("route", "unknown route '" + s + "' (exact, wigner-prop, weyl-prop)");
}

OutputSet OutputSet::parse(const std::vector<std::string>& names) {
  OutputSet o{false, false, false, false, false, false};
  for (const auto& n : names) {
    if (n == "wigner") o.wigner = true;
    else if (n == "husimi") o.husimi = true;
    else if (n == "moments") o.moments = true;
    else if (n == "criteria") o.criteria = true;
    else if (n == "entropies") o.entropies = true;
    else if (n == "weyl") o.weyl = true;
    else throw ConfigError("outputs", "unknown output '" + n + "'");
  }
  return o;
}

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> v;
  if (wigner) v.push_back("wigner");
  if (husimi) v.push_back("husimi");
  if (moments) v.push_back("moments");
  if (criteria) v.push_back("criteria");
  if (entropies) v.push_back("entropies");
  if (weyl) v.push_back("weyl");
  return v;
}

void RunConfig::validate() const {
  if (n_spins < 2 || n_spins % 2 != 0)
    throw ConfigError("n_spins", "must be even and >= 2 (odd phase-space dimension)");
  for (auto [name, v] : {std::pair{"h", h}, {"gamma", gamma}, {"lambda", lambda},
                         {"field_scale", field_scale}, {"chi", chi}, {"theta", initial.theta},
                         {"phi", initial.phi}, {"t0", t0}, {"t1", t1}, {"dt", dt}})
    if (!finite(v)) throw ConfigError(name, "must be finite");
  if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
  if (t1 < t0) throw ConfigError("t1", "must not be before t0");
  if (initial.theta < 0.0 || initial.theta > std::numbers::pi)
    throw ConfigError("theta", "must lie in [0, pi]");
  if (model == Model::lmg) {
    if (std::abs(gamma) > 1.0) throw ConfigError("gamma", "must lie in [-1, 1]");
  }
  for (double s : snapshots)
    if (!finite(s) || s < t0 - 1e-12 || s > t1 + 1e-12)
      throw ConfigError("snapshots", "snapshot times must lie in [t0, t1]");
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

Mat RunConfig::hamiltonian() const {
  const SpinSpace s = space();
  if (model == Model::kitagawa_ueda) return ku_hamiltonian({chi, n_spins}, s);
  LmgParams p;
  p.n_spins = n_spins;
  p.h = h;
  p.gamma = gamma;
  p.lambda = lambda;
  p.field_scale = field_scale;
  p.full_form = full_form;
  return lmg_hamiltonian(p, s);
}

std::vector<double> RunConfig::time_grid() const {
  const long long steps = static_cast<long long>(std::floor((t1 - t0) / dt + 1e-9));
  std::vector<double> t;
  t.reserve(steps + 2);
  for (long long k = 0; k <= steps; ++k) t.push_back(round12(t0 + k * dt));
  if (t1 - t.back() > 1e-9) t.push_back(t1);
  return t;
}

std::vector<std::string> preset_names() { return {"fig1b", "figb1", "appc"}; }

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "fig1b") {
    c.model = Model::lmg;
    c.n_spins = 20;
    c.h = -0.1;
    c.gamma = 0.2;
    c.field_scale = 2.0;
    c.initial = {std::numbers::pi / 2, 0.0};
    c.t0 = 0.0;
    c.t1 = 50.0;
    c.dt = 0.05;
    c.snapshots = {0.0, 2.15, 4.75, 7.10, 9.05, 9.95};
  } else if (name == "figb1") {
    c.model = Model::kitagawa_ueda;
    c.n_spins = 4;
    c.chi = 1.0;
    c.initial = {std::numbers::pi / 4, std::numbers::pi / 4};
    c.t0 = 0.0;
    c.t1 = 2.0 * std::numbers::pi;
    c.dt = 0.01;
    c.snapshots = {0.0, std::numbers::pi / 2, std::numbers::pi};
  } else if (name == "appc") {
    c.model = Model::lmg;
    c.n_spins = 20;
    c.h = 0.0;
    c.gamma = 0.5;
    c.field_scale = 2.0;
    c.initial = {std::numbers::pi / 2, 0.0};
    c.t0 = 0.0;
    c.t1 = 50.0;
    c.dt = 0.05;
    c.outputs = OutputSet{false, false, true, true, false, false};
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "' (fig1b, figb1, appc)");
  }
  return c;
}

Simulation::Simulation(RunConfig cfg, Exec exec) : cfg_(std::move(cfg)), exec_(exec) {
  cfg_.validate();
  n_spins_ = cfg_.n_spins;
  const SpinSpace space = cfg_.space();
  ks_ = build_kernels(space, exec_);
  gens_ = build_generators(space);
  H_ = cfg_.hamiltonian();
  rho0_ = DensityState::pure(space, coherent_state(space, cfg_.initial));
  w0_ = wigner_of_state(rho0_.rho, ks_, exec_);
  weyl0_ = weyl_of_state(rho0_.rho, ks_, exec_);
  mapped_ = map_moment_operators(gens_, ks_);
  if (cfg_.outputs.husimi || cfg_.outputs.entropies) smoothing_ = build_smoothing(ks_, exec_);
  exact_.emplace(H_, rho0_);
  enable_route(cfg_.route);
}

const SmoothingKernel& Simulation::smoothing() const {
  if (!smoothing_) throw DomainError("smoothing kernel was not requested for this run");
  return *smoothing_;
}

void Simulation::enable_route(Route r) {
  if (r == Route::wigner_prop && !wigner_prop_)
    wigner_prop_.emplace(build_liouville(H_, ks_, Representation::wigner, exec_));
  if (r == Route::weyl_prop && !weyl_prop_)
    weyl_prop_.emplace(build_liouville(H_, ks_, Representation::weyl, exec_));
}

PhaseGrid Simulation::wigner_at(double t, Route r) const {
  switch (r) {
    case Route::exact:
      return wigner_of_state(exact_->at(t - cfg_.t0).rho, ks_, Exec::serial);
    case Route::wigner_prop:
      if (!wigner_prop_) throw DomainError("wigner-prop route not enabled");
      return wigner_prop_->apply(w0_, t, cfg_.t0);
    default:
      if (!weyl_prop_) throw DomainError("weyl-prop route not enabled");
      return weyl_to_wigner(weyl_prop_->apply(weyl0_, t, cfg_.t0), ks_, Exec::serial);
  }
}

PhaseGrid Simulation::weyl_at(double t) const {
  if (weyl_prop_) return weyl_prop_->apply(weyl0_, t, cfg_.t0);
  return weyl_of_state(exact_->at(t - cfg_.t0).rho, ks_, Exec::serial);
}

DensityState Simulation::state_from_wigner(const PhaseGrid& w) const {
  return {ks_.space, operator_from_grid(w, ks_)};
}

Frame Simulation::frame(double t) const {
  Frame f;
  f.t = t;
  const PhaseGrid w = wigner_at(t);
  if (cfg_.verify_route && cfg_.route != Route::exact) {
    f.route_deviation = (w.values - wigner_at(t, Route::exact).values).cwiseAbs().maxCoeff();
    if (!(f.route_deviation <= 1e-6))
      throw IntegrityError(to_string(cfg_.route) + " route deviates from exact evolution by " +
                           std::to_string(f.route_deviation) + " at t=" + std::to_string(t));
  }
  f.moments = moments_from_wigner(w, mapped_, t);
  f.criteria = evaluate_criteria(f.moments, n_spins_);
  f.criteria.t = t;
  const DensityState rho = state_from_wigner(w);
  f.fidelity = fidelity(rho0_, rho);
  if (smoothing_) {
    const PhaseGrid hu = husimi_from_wigner(w, *smoothing_, Exec::serial);
    const Eigen::VectorXd v = hu.values.real();
    f.husimi_min = v.minCoeff();
    f.husimi_max = v.maxCoeff();
    f.husimi_norm_error = std::abs(v.sum() / ks_.space.dim - 1.0);
    f.entropy = entropies(hu, rho.rho, t);
  }
  return f;
}

RunResult Simulation::run() const {
  const std::vector<double> times = cfg_.time_grid();
  RunResult r;
  r.frames.resize(times.size());
  for_each_index(static_cast<int>(times.size()), exec_,
                 [&](int k) { r.frames[k] = frame(times[k]); });

  if (cfg_.verify_route && cfg_.route != Route::exact) {
    r.max_route_deviation = 0.0;
    for (const Frame& f : r.frames) r.max_route_deviation = std::max(r.max_route_deviation, f.route_deviation);
  }
  if (smoothing_) {
    r.husimi_min = 1e300;
    r.husimi_max = -1e300;
    r.husimi_norm_error = 0.0;
    for (const Frame& f : r.frames) {
      r.husimi_min = std::min(r.husimi_min, f.husimi_min);
      r.husimi_max = std::max(r.husimi_max, f.husimi_max);
      r.husimi_norm_error = std::max(r.husimi_norm_error, f.husimi_norm_error);
    }
  }

  const OutputSet& o = cfg_.outputs;
  if (o.wigner || o.husimi || o.weyl) {
    for (double t : cfg_.snapshots) {
      Snapshot s;
      s.t = t;
      s.wigner = wigner_at(t);
      if (o.husimi) s.husimi = husimi_from_wigner(s.wigner, *smoothing_, exec_);
      if (o.weyl) s.weyl = weyl_at(t);
      r.snapshots.push_back(std::move(s));
    }
  }
  return r;
}

std::vector<Window> violation_windows(const std::vector<double>& t, const std::vector<bool>& flag) {
  std::vector<Window> w;
  for (std::size_t k = 0; k < flag.size(); ++k) {
    if (!flag[k]) continue;
    std::size_t e = k;
    while (e + 1 < flag.size() && flag[e + 1]) ++e;
    w.push_back({t[k], t[e]});
    k = e;
  }
  return w;
}

double flag_agreement(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw DomainError("flag series have different lengths");
  if (a.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t k = 0; k < a.size(); ++k) same += a[k] == b[k];
  return double(same) / a.size();
}

int first_local_min(const std::vector<double>& v) {
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if (v[k] < v[k - 1] && v[k] <= v[k + 1]) return static_cast<int>(k);
  return -1;
}

int first_local_max(const std::vector<double>& v) {
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if (v[k] > v[k - 1] && v[k] >= v[k + 1]) return static_cast<int>(k);
  return -1;
}

std::vector<SweepRow> sweep_gamma(const RunConfig& base, const std::vector<double>& gammas, Exec exec) {
  std::vector<SweepRow> rows;
  for (double g : gammas) {
    RunConfig c = base;
    c.model = Model::lmg;
    c.gamma = g;
    c.outputs = OutputSet{false, false, true, true, false, false};
    c.snapshots.clear();
    SweepRow row;
    row.gamma = g;
    row.result = Simulation(c, exec).run();

    std::vector<double> t;
    std::vector<bool> sor, toth, sq;
    auto fold_min = [](double acc, double v) { return defined(v) ? (defined(acc) ? std::min(acc, v) : v) : acc; };
    for (const Frame& f : row.result.frames) {
      t.push_back(f.t);
      sor.push_back(f.criteria.sorensen_violated(2));
      toth.push_back(f.criteria.toth_violated(2));
      sq.push_back(f.criteria.squeezed(2, 0));
      row.min_sorensen_z = fold_min(row.min_sorensen_z, f.criteria.sorensen[2]);
      row.min_toth_z = fold_min(row.min_toth_z, f.criteria.toth_param[2]);
      row.min_squeezing_z_x = fold_min(row.min_squeezing_z_x, f.criteria.S[2][0]);
    }
    row.sorensen_toth_agreement = flag_agreement(sor, toth);
    row.sorensen_squeezing_agreement = flag_agreement(sor, sq);
    row.sorensen_windows = violation_windows(t, sor);
    row.toth_windows = violation_windows(t, toth);
    row.squeezing_windows = violation_windows(t, sq);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace phasec
