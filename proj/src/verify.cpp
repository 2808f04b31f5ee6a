#include "phasec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "phasec/io.hpp"
#include "phasec/pipeline.hpp"

namespace phasec {

namespace {

Mat random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat A(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = cplx(g(rng), g(rng));
  return (A + A.adjoint()) / 2.0;
}

SuiteResult make(std::string name, double dev, double tol, std::string detail = {}) {
  return {std::move(name), dev <= tol, dev, tol, std::move(detail)};
}

double max_abs(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

SuiteResult kernel_identities() {
  double dev = 0.0;
  for (int n : {3, 5, 7}) dev = std::max(dev, kernel_invariant_defect(build_kernels(SpinSpace::from_dim(n))));
  return make("kernel_invariants_n3_n5_n7", dev, 1e-12);
}

SuiteResult liouville_oracles() {
  std::mt19937_64 rng(7);
  const KernelSet ks = build_kernels(SpinSpace::from_dim(3));
  double dev = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Mat H = random_hermitian(3, rng);
    dev = std::max(dev, (build_liouville(H, ks, Representation::wigner).matrix - liouville_six_index(H, ks))
                            .cwiseAbs().maxCoeff());
    dev = std::max(dev, (build_liouville(H, ks, Representation::weyl).matrix -
                         liouville_weyl_operator_form(H, ks)).cwiseAbs().maxCoeff());
  }
  return make("liouville_kernels_n3", dev, 1e-10);
}

SuiteResult bracket_oracles() {
  std::mt19937_64 rng(11);
  const KernelSet ks = build_kernels(SpinSpace::from_dim(3));
  double dev = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Mat A = random_hermitian(3, rng), B = random_hermitian(3, rng);
    const PhaseGrid a = map_operator(A, ks), b = map_operator(B, ks);
    dev = std::max(dev, max_abs(bracket_convolution(a, b, Bracket::anticommutator).values,
                                map_anticommutator(A, B, ks).values));
    dev = std::max(dev, max_abs(bracket_convolution(a, b, Bracket::commutator).values,
                                map_commutator(A, B, ks).values));
  }
  return make("bracket_convolutions_n3", dev, 1e-10);
}

SuiteResult coherent_closed_forms() {
  const SpinSpace s = SpinSpace::from_two_j(4);
  const Generators g = build_generators(s);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(-std::numbers::pi, std::numbers::pi);
  double dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const CoherentParams p{th(rng), ph(rng)};
    const Vec psi = coherent_state(s, p);
    const Mat rho = psi * psi.adjoint();
    const MomentReport m = moments_from_state(rho, g);
    const CoherentVariances cv = coherent_variances(s.j(), p);
    const double v[] = {m.var[0], m.var[1], m.var[2], m.cov[0], m.cov[1], m.cov[2]};
    const double w[] = {cv.x, cv.y, cv.z, cv.xy, cv.xz, cv.yz};
    for (int k = 0; k < 6; ++k) dev = std::max(dev, std::abs(v[k] - w[k]));
    auto var_of = [&](const Mat& O) {
      const cplx e = (rho * O).trace(), e2 = (rho * O * O).trace();
      return (e2 - e * e).real();
    };
    dev = std::max(dev, std::abs(var_of(g.Jx + g.Jy) - cv.x_plus_y));
    dev = std::max(dev, std::abs(var_of(g.Jx + g.Jz) - cv.x_plus_z));
    dev = std::max(dev, std::abs(var_of(g.Jy + g.Jz) - cv.y_plus_z));
    dev = std::max(dev, std::abs(var_of(g.Jx + g.Jy + g.Jz) - cv.x_plus_y_plus_z));
  }
  return make("coherent_variances_j2", dev, 1e-10);
}

SuiteResult twisting_closed_forms() {
  std::vector<double> taus;
  for (int k = 0; k <= 126; ++k) taus.push_back(0.05 * k);
  const KuComparison c = ku_numeric_vs_analytic({1.0, 4}, {std::numbers::pi / 4, std::numbers::pi / 4}, taus);
  return make("twisting_moments_j2", c.max_deviation, 1e-8,
              "worst " + c.worst_field + " at tau=" + format_number(c.worst_tau));
}

SuiteResult route_equivalence(const RunConfig& cfg, const std::string& name) {
  Simulation sim(cfg);
  sim.enable_route(Route::wigner_prop);
  sim.enable_route(Route::weyl_prop);
  double dev = 0.0;
  for (double t : cfg.time_grid()) {
    const PhaseGrid we = sim.wigner_at(t, Route::exact);
    dev = std::max(dev, max_abs(we.values, sim.wigner_at(t, Route::wigner_prop).values));
    dev = std::max(dev, max_abs(we.values, sim.wigner_at(t, Route::weyl_prop).values));
  }
  return make(name, dev, 1e-6);
}

RunConfig reference_run() {
  RunConfig c = preset("fig1b");
  c.t1 = 10.0;
  c.snapshots.clear();
  return c;
}

std::vector<SuiteResult> reference_values() {
  RunConfig c = reference_run();
  c.outputs = OutputSet{false, true, false, false, true, false};
  Simulation sim(c);
  std::vector<SuiteResult> out;
  double dev = 0.0;
  std::ostringstream detail;
  for (auto [t, f] : {std::pair{2.15, 0.55}, {4.75, 0.48}, {7.10, 0.89}, {9.05, 0.78}, {9.95, 0.51}}) {
    const double got = sim.frame(t).fidelity;
    dev = std::max(dev, std::abs(got - f));
    detail << "F(" << format_number(t) << ")=" << got << " ";
  }
  out.push_back(make("lmg_fidelity_reference", dev, 0.03, detail.str()));

  const Frame f0 = sim.frame(0.0), f1 = sim.frame(2.15);
  const EntropyReport& e0 = *f0.entropy;
  const double d[] = {std::abs(e0.E_H - 0.1994), std::abs(e0.I_H - 0.7144),
                      std::abs(e0.E_Q + e0.E_R - 0.5150), std::abs(f1.entropy->E_H - 0.1958)};
  std::ostringstream ed;
  ed << "E_H(0)=" << e0.E_H << " I_H(0)=" << e0.I_H << " E_Q+E_R=" << e0.E_Q + e0.E_R
     << " E_H(2.15)=" << f1.entropy->E_H;
  out.push_back(make("lmg_entropy_reference", *std::max_element(std::begin(d), std::end(d)), 0.005, ed.str()));
  return out;
}

}  // namespace

std::vector<SuiteResult> run_verify(VerifyLevel level) {
  std::vector<SuiteResult> r;
  auto guarded = [&r](const std::string& name, auto&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      r.push_back({name, false, kUndefined, 0.0, std::string("exception: ") + e.what()});
    }
  };
  guarded("kernel_invariants_n3_n5_n7", [&] { r.push_back(kernel_identities()); });
  guarded("liouville_kernels_n3", [&] { r.push_back(liouville_oracles()); });
  guarded("bracket_convolutions_n3", [&] { r.push_back(bracket_oracles()); });
  guarded("coherent_variances_j2", [&] { r.push_back(coherent_closed_forms()); });
  guarded("twisting_moments_j2", [&] { r.push_back(twisting_closed_forms()); });
  guarded("route_equivalence_j2", [&] {
    RunConfig c = reference_run();
    c.n_spins = 4;
    c.t1 = 5.0;
    c.outputs = OutputSet{false, false, true, false, false, false};
    r.push_back(route_equivalence(c, "route_equivalence_j2"));
  });
  if (level == VerifyLevel::full) {
    guarded("route_equivalence_j10", [&] {
      RunConfig c = reference_run();
      c.outputs = OutputSet{false, false, true, false, false, false};
      r.push_back(route_equivalence(c, "route_equivalence_j10"));
    });
    guarded("lmg_reference_values", [&] {
      for (auto& s : reference_values()) r.push_back(std::move(s));
    });
  }
  return r;
}

std::string render_verify(const std::vector<SuiteResult>& results) {
  CsvTable t({"suite", "status", "max_deviation", "tolerance", "detail"});
  for (const auto& s : results) {
    std::string d = s.detail;
    for (char& ch : d)
      if (ch == ',' || ch == '\n') ch = ' ';
    t.add_raw({s.name, s.passed ? "pass" : "fail", format_number(s.max_deviation),
               format_number(s.tolerance), d});
  }
  return t.render();
}

}  // namespace phasec
