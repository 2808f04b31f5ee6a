#include "phasec/models.hpp"

#include <cmath>

#include "phasec/dynamics.hpp"

namespace phasec {

void LmgParams::validate() const {
  if (n_spins < 2 || n_spins % 2 != 0)
    throw DomainError("n_spins must be an even integer >= 2");
  if (std::abs(gamma) > 1.0) throw DomainError("gamma must lie in [-1, 1]");
  if (!std::isfinite(h) || !std::isfinite(lambda) || !std::isfinite(field_scale))
    throw DomainError("LMG parameters must be finite");
}

Mat lmg_hamiltonian(const LmgParams& p, const SpinSpace& space) {
  p.validate();
  if (space.dim != p.n_spins + 1)
    throw DomainError("LMG space must have dimension n_spins + 1");
  const Generators g = build_generators(space);
  const double n = p.n_spins;
  if (p.full_form) {
    const double pp = p.lambda * (1 + p.gamma) / (2 * n), pm = p.lambda * (1 - p.gamma) / (2 * n);
    const Mat I = Mat::Identity(space.dim, space.dim);
    return -2 * p.h * g.Jz - 2 * pp * (g.Jsquared - g.Jz * g.Jz - (n / 2) * I) -
           pm * (g.Jplus * g.Jplus + g.Jminus * g.Jminus);
  }
  return -p.field_scale * p.h * g.Jz - (p.lambda / n) * (g.Jx * g.Jx + p.gamma * g.Jy * g.Jy);
}

Mat ku_hamiltonian(const KuParams& p, const SpinSpace& space) {
  const Generators g = build_generators(space);
  return p.chi * g.Jz * g.Jz;
}

MomentReport ku_analytic_moments(const KuParams& p, const CoherentParams& cp, double tau) {
  validate(cp);
  const double j = 0.5 * p.two_j, th = cp.theta, ph = cp.phi;
  const double ct = std::cos(th), st2 = std::sin(th) * std::sin(th);
  auto amp = [&](double x) {
    return std::sqrt(std::cos(x) * std::cos(x) + std::sin(x) * std::sin(x) * ct * ct);
  };
  // continuous phase: arg(cos x + i sin x cos theta)
  auto delta = [&](double x) { return std::arg(cplx(std::cos(x), std::sin(x) * ct)); };
  const double a1 = amp(tau), d1 = delta(tau), a2 = amp(2 * tau), d2 = delta(2 * tau);

  const double lin = std::pow(a1, 2 * j - 1) * j * std::sin(th);
  // the (2j-1) prefactor vanishes for j = 1/2, where A^{2j-2} may be singular
  const double quad_amp = p.two_j == 1 ? 0.0 : (j / 4) * (2 * j - 1) * std::pow(a2, 2 * j - 2);
  const double quad_phase = 2 * ph - (2 * j - 2) * d2;

  MomentReport r;
  r.t = tau;
  r.mean = {lin * std::cos(ph - (2 * j - 1) * d1), lin * std::sin(ph - (2 * j - 1) * d1), -j * ct};
  r.second[0] = j / 2 + ((j / 4) * (2 * j - 1) + quad_amp * std::cos(quad_phase)) * st2;
  r.second[1] = j / 2 + ((j / 4) * (2 * j - 1) - quad_amp * std::cos(quad_phase)) * st2;
  r.second[2] = j * j * ct * ct + (j / 2) * st2;
  const double a4 = std::pow(a1, 4 * j - 2);
  r.var[0] = r.second[0] - j * j * a4 * std::pow(std::cos(ph - (2 * j - 1) * d1), 2) * st2;
  r.var[1] = r.second[1] - j * j * a4 * std::pow(std::sin(ph - (2 * j - 1) * d1), 2) * st2;
  r.var[2] = (j / 2) * st2;
  r.cov[0] = quad_amp * std::sin(quad_phase) * st2 -
             (j * j / 2) * a4 * std::sin(2 * ph - (4 * j - 2) * d1) * st2;
  r.cov[1] = r.cov[2] = kUndefined;
  r.anticomm[0] = 2 * (r.cov[0] + r.mean[0] * r.mean[1]);
  r.anticomm[1] = r.anticomm[2] = kUndefined;
  return r;
}

KuComparison ku_numeric_vs_analytic(const KuParams& p, const CoherentParams& cp,
                                    const std::vector<double>& taus) {
  if (p.chi == 0.0) throw DomainError("chi must be nonzero to map tau onto time");
  const SpinSpace space = SpinSpace::from_two_j(p.two_j);
  const Generators g = build_generators(space);
  const ExactEvolver ev(ku_hamiltonian(p, space), DensityState::pure(space, coherent_state(space, cp)));
  KuComparison out;
  auto check = [&](double a, double b, double tau, const char* name) {
    const double d = std::abs(a - b);
    if (d > out.max_deviation) {
      out.max_deviation = d;
      out.worst_tau = tau;
      out.worst_field = name;
    }
  };
  static const char* axes[3] = {"x", "y", "z"};
  for (double tau : taus) {
    const MomentReport an = ku_analytic_moments(p, cp, tau);
    const MomentReport nu = moments_from_state(ev.at(tau / p.chi).rho, g, tau);
    for (int a = 0; a < 3; ++a) {
      check(an.mean[a], nu.mean[a], tau, (std::string("mean_") + axes[a]).c_str());
      check(an.second[a], nu.second[a], tau, (std::string("second_") + axes[a]).c_str());
      check(an.var[a], nu.var[a], tau, (std::string("var_") + axes[a]).c_str());
    }
    check(an.cov[0], nu.cov[0], tau, "cov_xy");
  }
  return out;
}

}  // namespace phasec
