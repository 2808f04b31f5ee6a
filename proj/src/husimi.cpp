#include "phasec/husimi.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace phasec {

namespace {

constexpr double kBoundTol = 1e-9;

cplx theta_sum(double z, double a, ThetaConvention c, int max_terms, bool alternating) {
  if (!(a > 0.0)) throw DomainError("theta nome parameter must be positive");
  const double f = c == ThetaConvention::two_pi ? 2.0 * std::numbers::pi : 2.0;
  cplx sum = 1.0;
  for (int n = 1;; ++n) {
    const double w = std::exp(-std::numbers::pi * a * double(n) * n);
    if (max_terms > 0 ? n > max_terms : w < 1e-16 * std::abs(sum)) break;
    const double sign = (alternating && (n % 2)) ? -1.0 : 1.0;
    // n and -n together
    sum += sign * w * 2.0 * std::cos(f * n * z);
  }
  return sum;
}

ThetaConvention other(ThetaConvention c) {
  return c == ThetaConvention::two_pi ? ThetaConvention::alternate : ThetaConvention::two_pi;
}

Eigen::VectorXd smooth(const Eigen::MatrixXd& E, const Eigen::VectorXd& w, int n, Exec exec) {
  const Eigen::Index pts = E.rows();
  Eigen::VectorXd out(pts);
  // fixed summation order per row keeps serial and parallel bitwise equal
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (Eigen::Index p = 0; p < pts; ++p) {
    double s = 0.0;
    for (Eigen::Index q = 0; q < pts; ++q) s += E(p, q) * w(q);
    out(p) = s / n;
  }
  return out;
}

PhaseGrid to_grid(const SpinSpace& space, const Eigen::VectorXd& v) {
  PhaseGrid g;
  g.space = space;
  g.kind = GridKind::wigner_real;
  g.values = v.cast<cplx>();
  return g;
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::string to_string(ThetaConvention c) {
  return c == ThetaConvention::two_pi ? "two_pi" : "alternate";
}

double theta3(double z, double a, ThetaConvention c, int max_terms) {
  return theta_sum(z, a, c, max_terms, false).real();
}

double theta4(double z, double a, ThetaConvention c, int max_terms) {
  return theta_sum(z, a, c, max_terms, true).real();
}

cplx smoothing_weight(const SpinSpace& space, int eta, int xi, ThetaConvention c) {
  const double a = 1.0 / (2.0 * space.two_j + 2.0);
  const double pi = std::numbers::pi;
  const double t3e = theta3(a * eta, a, c), t4e = theta4(a * eta, a, c);
  const double t3x = theta3(a * xi, a, c), t4x = theta4(a * xi, a, c);
  const cplx pe = std::polar(1.0, pi * eta);
  const cplx px = std::polar(1.0, pi * xi);
  const cplx pe2 = std::polar(1.0, pi * (eta + space.two_j + 1));
  return 0.5 * std::sqrt(a) * (t3e * (t3x + pe * t4x) + px * t4e * (t3x + pe2 * t4x));
}

SmoothingKernel build_smoothing_unchecked(const SpinSpace& space, ThetaConvention c, Exec exec) {
  space.require_odd();
  const int n = space.dim, ell = space.ell, pts = space.points();
  SmoothingKernel sk;
  sk.space = space;
  sk.convention = c;
  sk.a = 1.0 / (2.0 * space.two_j + 2.0);

  const cplx m00 = smoothing_weight(space, 0, 0, c);
  sk.K.resize(pts);
  for (int eta = -ell; eta <= ell; ++eta)
    for (int xi = -ell; xi <= ell; ++xi)
      sk.K(space.flat(eta, xi)) = smoothing_weight(space, eta, xi, c) / m00;

  // E depends on (mu'-mu, nu'-nu) mod N only; tabulate by difference first.
  const PhaseTable ph(n);
  Eigen::MatrixXcd diff(n, n);
  for (int dm = 0; dm < n; ++dm)
    for (int dn = 0; dn < n; ++dn) {
      cplx s = 0.0;
      for (int eta = -ell; eta <= ell; ++eta)
        for (int xi = -ell; xi <= ell; ++xi)
          s += ph.omega(static_cast<long long>(eta) * dm + static_cast<long long>(xi) * dn) *
               sk.K(space.flat(eta, xi));
      diff(dm, dn) = s / double(n);
    }
  sk.E_imag = diff.imag().cwiseAbs().maxCoeff();

  sk.E.resize(pts, pts);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int p = 0; p < pts; ++p) {
    const int mu = p / n, nu = p % n;
    for (int q = 0; q < pts; ++q) {
      const int dm = ((q / n - mu) % n + n) % n, dn = ((q % n - nu) % n + n) % n;
      sk.E(p, q) = diff(dm, dn).real();
    }
  }
  return sk;
}

SmoothingKernel build_smoothing(const KernelSet& ks, ThetaConvention preferred, Exec exec) {
  std::ostringstream diag;
  for (ThetaConvention c : {preferred, other(preferred)}) {
    SmoothingKernel sk = build_smoothing_unchecked(ks.space, c, exec);
    const int n = ks.space.dim;
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> gauss;
    double lo = 1e300, hi = -1e300, norm_err = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Vec psi(n);
      for (int k = 0; k < n; ++k) psi(k) = cplx(gauss(rng), gauss(rng));
      psi.normalize();
      const PhaseGrid w = wigner_of_state(psi * psi.adjoint(), ks, exec);
      const Eigen::VectorXd h = smooth(sk.E, w.values.real(), n, exec);
      lo = std::min(lo, h.minCoeff());
      hi = std::max(hi, h.maxCoeff());
      norm_err = std::max(norm_err, std::abs(h.sum() / n - 1.0));
    }
    sk.validation_min = lo;
    sk.validation_max = hi;
    diag << to_string(c) << ": range [" << lo << ", " << hi << "], norm error " << norm_err
         << ", imag(E) " << sk.E_imag << "; ";
    const bool ok = lo >= -kBoundTol && hi <= 1.0 + kBoundTol && norm_err < 1e-9 &&
                    sk.E_imag < 1e-10 && std::abs(sk.K(ks.space.flat(0, 0)) - 1.0) < 1e-14;
    if (ok) {
      sk.diagnostics = diag.str();
      return sk;
    }
  }
  throw DomainError("no theta convention gives a valid Husimi kernel: " + diag.str());
}

SmoothingKernel build_smoothing(const KernelSet& ks, Exec exec) {
#ifdef PHASEC_THETA_ALT
  return build_smoothing(ks, ThetaConvention::alternate, exec);
#else
  return build_smoothing(ks, ThetaConvention::two_pi, exec);
#endif
}

PhaseGrid husimi_unchecked(const PhaseGrid& wigner, const SmoothingKernel& sk, Exec exec) {
  if (!(wigner.space == sk.space)) throw DomainError("Wigner grid and kernel spaces differ");
  return to_grid(sk.space, smooth(sk.E, wigner.values.real(), sk.space.dim, exec));
}

PhaseGrid husimi_from_wigner(const PhaseGrid& wigner, const SmoothingKernel& sk, Exec exec) {
  PhaseGrid h = husimi_unchecked(wigner, sk, exec);
  const Eigen::VectorXd v = h.values.real();
  const double norm = v.sum() / sk.space.dim;
  if (v.minCoeff() < -kBoundTol || v.maxCoeff() > 1.0 + kBoundTol || std::abs(norm - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "Husimi out of bounds: range [" << v.minCoeff() << ", " << v.maxCoeff()
       << "], normalization " << norm;
    throw IntegrityError(os.str());
  }
  return h;
}

Marginals marginals(const PhaseGrid& husimi) {
  const int n = husimi.space.dim;
  const Eigen::MatrixXd h = as_real_matrix(husimi);
  const double s = 1.0 / std::sqrt(double(n));
  return {h.rowwise().sum() * s, h.colwise().sum().transpose() * s};
}

double EntropyReport::mutual_defect() const { return std::max(0.0, -I_H); }

double EntropyReport::araki_lieb_defect() const {
  return std::max({0.0, std::abs(E_Q - E_R) - E_H, E_H - (E_Q + E_R)});
}

double EntropyReport::von_neumann_defect() const { return std::max(0.0, S_vn - E_H); }

double von_neumann_entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) s -= xlogx(es.eigenvalues()(k));
  return s;
}

EntropyReport entropies_unchecked(const PhaseGrid& husimi, const Mat& rho, double t) {
  const int n = husimi.space.dim;
  const double rn = std::sqrt(double(n));
  EntropyReport r;
  r.t = t;
  const Eigen::VectorXd h = husimi.values.real();
  for (Eigen::Index k = 0; k < h.size(); ++k) r.E_H -= xlogx(h(k));
  r.E_H /= n;
  const Marginals m = marginals(husimi);
  for (int k = 0; k < n; ++k) {
    r.E_Q -= xlogx(m.Q(k));
    r.E_R -= xlogx(m.R(k));
  }
  r.E_Q /= rn;
  r.E_R /= rn;
  r.I_H = r.E_Q + r.E_R - r.E_H;
  r.S_vn = von_neumann_entropy(rho);
  return r;
}

EntropyReport entropies(const PhaseGrid& husimi, const Mat& rho, double t) {
  EntropyReport r = entropies_unchecked(husimi, rho, t);
  const double worst = std::max({r.mutual_defect(), r.araki_lieb_defect(), r.von_neumann_defect()});
  if (worst > 1e-9) {
    std::ostringstream os;
    os << "entropy invariant broken at t=" << t << ": E_H=" << r.E_H << " E_Q=" << r.E_Q
       << " E_R=" << r.E_R << " S_vn=" << r.S_vn;
    throw IntegrityError(os.str());
  }
  return r;
}

}  // namespace phasec
