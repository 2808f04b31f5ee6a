#include "phasec/schwinger.hpp"

#include <cmath>
#include <numbers>

#include "phasec/linalg.hpp"

namespace phasec {

namespace {

long long mod(long long x, long long n) { return ((x % n) + n) % n; }

void require_same(const SpinSpace& a, const SpinSpace& b) {
  if (!(a == b)) throw DomainError("spin spaces differ: " + describe(a) + " vs " + describe(b));
}

void require_dim(const Mat& O, const SpinSpace& s) {
  if (O.rows() != s.dim || O.cols() != s.dim)
    throw DomainError("operator dimension " + std::to_string(O.rows()) + "x" +
                      std::to_string(O.cols()) + " does not match N=" + std::to_string(s.dim));
}

}  // namespace

PhaseTable::PhaseTable(int n) : n_(n), half_(2 * n) {
  for (int k = 0; k < 2 * n; ++k) half_[k] = std::polar(1.0, std::numbers::pi * k / n);
}

cplx PhaseTable::half(long long k) const { return half_[mod(k, 2LL * n_)]; }
cplx PhaseTable::omega(long long k) const { return half_[2 * mod(k, n_)]; }

int reduction_sign(const SpinSpace& space, long long c1, long long c2) {
  const long long n = space.dim;
  const long long r1 = space.reduce(c1), r2 = space.reduce(c2);
  const long long k = (c1 - r1) / n, m = (c2 - r2) / n;
  return mod(k * r2 + m * r1 + n * k * m, 2) == 0 ? 1 : -1;
}

Mat KernelSet::schwinger_at(long long eta, long long xi) const {
  const int n = space.dim;
  const double norm = 1.0 / std::sqrt(double(n));
  const cplx pre = norm * phases.half(eta * xi);
  Mat S = Mat::Zero(n, n);
  for (int b = 0; b < n; ++b) {
    const int a = static_cast<int>(mod(b - xi, n));
    S(a, b) = pre * phases.omega(static_cast<long long>(a - space.ell) * eta);
  }
  return S;
}

KernelSet build_kernels(const SpinSpace& space, Exec exec) {
  space.require_odd();
  const int n = space.dim, ell = space.ell, pts = space.points();
  KernelSet ks;
  ks.space = space;
  ks.phases = PhaseTable(n);
  const PhaseTable& ph = ks.phases;

  ks.U = Mat::Zero(n, n);
  ks.V = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    ks.U(k, k) = ph.omega(k - ell);
    ks.V(mod(k - 1, n), k) = 1.0;
  }

  ks.S.resize(pts);
  for (int eta = -ell; eta <= ell; ++eta)
    for (int xi = -ell; xi <= ell; ++xi) ks.S[space.flat(eta, xi)] = ks.schwinger_at(eta, xi);

  // G(mu,nu)_{ab} = (1/N) sum_eta half(eta xi) omega(eta (m_a - mu) - xi nu), xi = b - a mod N,
  // because S(eta, xi) has its only entry of column b in row b - xi.
  ks.G.assign(pts, Mat::Zero(n, n));
  auto build_point = [&](int p) {
    const int mu = p / n - ell, nu = p % n - ell;
    Mat& g = ks.G[p];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const long long xi = space.reduce(b - a);
        cplx s = 0.0;
        for (int eta = -ell; eta <= ell; ++eta)
          s += ph.half(eta * xi) * ph.omega(eta * (a - ell - mu) - xi * nu);
        g(a, b) = s / double(n);
      }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int p = 0; p < pts; ++p) build_point(p);
  } else {
    for (int p = 0; p < pts; ++p) build_point(p);
  }

  ks.adj_G.resize(pts, n * n);
  ks.tr_S.resize(pts, n * n);
  for (int p = 0; p < pts; ++p)
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        ks.adj_G(p, a + b * n) = std::conj(ks.G[p](a, b));
        ks.tr_S(p, a + b * n) = ks.S[p](b, a);
      }

  const double norm = 1.0 / std::sqrt(double(n));
  ks.fourier.resize(pts, pts);
  for (int mu = -ell; mu <= ell; ++mu)
    for (int nu = -ell; nu <= ell; ++nu)
      for (int eta = -ell; eta <= ell; ++eta)
        for (int xi = -ell; xi <= ell; ++xi)
          ks.fourier(space.flat(mu, nu), space.flat(eta, xi)) =
              norm * ph.omega(-(static_cast<long long>(eta) * mu + static_cast<long long>(xi) * nu));
  return ks;
}

double kernel_invariant_defect(const KernelSet& ks) {
  const int n = ks.space.dim;
  const Mat I = Mat::Identity(n, n);
  double worst = 0.0;
  auto upd = [&](double d) { worst = std::max(worst, d); };
  Mat Un = I, Vn = I;
  for (int k = 0; k < n; ++k) {
    Un = Un * ks.U;
    Vn = Vn * ks.V;
  }
  upd((Un - I).cwiseAbs().maxCoeff());
  upd((Vn - I).cwiseAbs().maxCoeff());
  // V U = omega U V
  upd((ks.V * ks.U - ks.phases.omega(1) * ks.U * ks.V).cwiseAbs().maxCoeff());
  Mat sum = Mat::Zero(n, n);
  for (const Mat& g : ks.G) {
    upd(hermiticity_defect(g));
    upd(std::abs(g.trace() - 1.0));
    sum += g;
  }
  upd((sum - double(n) * I).cwiseAbs().maxCoeff());
  return worst;
}

PhaseGrid map_operator(const Mat& O, const KernelSet& ks, Exec exec) {
  require_dim(O, ks.space);
  return {ks.space, GridKind::mapped_complex, dense_matvec(ks.adj_G, vectorize(O), exec)};
}

Mat operator_from_grid(const PhaseGrid& g, const KernelSet& ks) {
  require_same(g.space, ks.space);
  const int n = ks.space.dim;
  Mat O = Mat::Zero(n, n);
  for (int p = 0; p < ks.space.points(); ++p) O += g.values(p) * ks.G[p];
  return O / double(n);
}

PhaseGrid wigner_of_state(const Mat& rho, const KernelSet& ks, Exec exec) {
  require_dim(rho, ks.space);
  if (hermiticity_defect(rho) > 1e-10) throw DomainError("density matrix is not hermitian");
  PhaseGrid w = map_operator(rho, ks, exec);
  if (w.max_imag() > 1e-10) throw IntegrityError("Wigner function has an imaginary part");
  w.values = w.values.real().cast<cplx>();
  w.kind = GridKind::wigner_real;
  return w;
}

PhaseGrid weyl_of_state(const Mat& rho, const KernelSet& ks, Exec exec) {
  require_dim(rho, ks.space);
  if (hermiticity_defect(rho) > 1e-10) throw DomainError("density matrix is not hermitian");
  return {ks.space, GridKind::weyl_complex, dense_matvec(ks.tr_S, vectorize(rho), exec)};
}

PhaseGrid weyl_to_wigner(const PhaseGrid& weyl, const KernelSet& ks, Exec exec) {
  require_same(weyl.space, ks.space);
  PhaseGrid w{ks.space, GridKind::wigner_real, dense_matvec(ks.fourier, weyl.values, exec)};
  if (w.max_imag() > 1e-8) throw IntegrityError("Fourier image of Weyl grid is not real");
  w.values = w.values.real().cast<cplx>();
  return w;
}

PhaseGrid wigner_to_weyl(const PhaseGrid& wigner, const KernelSet& ks, Exec exec) {
  require_same(wigner.space, ks.space);
  const Mat inv = ks.fourier.adjoint() / double(ks.space.dim);
  return {ks.space, GridKind::weyl_complex, dense_matvec(inv, wigner.values, exec)};
}

Mat density_from_weyl(const PhaseGrid& weyl, const KernelSet& ks) {
  require_same(weyl.space, ks.space);
  const int n = ks.space.dim;
  Mat rho = Mat::Zero(n, n);
  for (int p = 0; p < ks.space.points(); ++p) rho += weyl.values(p) * ks.S[p].adjoint();
  return rho;
}

cplx mean_value(const PhaseGrid& op, const PhaseGrid& wigner) {
  require_same(op.space, wigner.space);
  cplx s = 0.0;
  for (Eigen::Index p = 0; p < op.values.size(); ++p) s += op.values(p) * wigner.values(p);
  return s / double(op.space.dim);
}

cplx mapping_kernel_element(const SpinSpace& space, int m, int m_prime, int mu, int nu) {
  space.require_odd();
  const PhaseTable ph(space.dim);
  // the half-angle phase is not N-periodic, so the difference is taken as a reduced label
  const long long dm = space.reduce(m_prime - m);
  cplx s = 0.0;
  for (long long beta = -space.ell; beta <= space.ell; ++beta)
    s += ph.omega(-(beta * (mu - m_prime) + dm * nu)) * ph.half(-dm * beta);
  return s / double(space.dim);
}

PhaseGrid map_anticommutator(const Mat& A, const Mat& B, const KernelSet& ks, Exec exec) {
  return map_operator(A * B + B * A, ks, exec);
}

PhaseGrid map_commutator(const Mat& A, const Mat& B, const KernelSet& ks, Exec exec) {
  return map_operator(A * B - B * A, ks, exec);
}

namespace {

// cos or -i sin of pi (a1 b2 - a2 b1)/N, times the label-folding sign of a + b.
// With +i sin the sum produces [B, A]; the minus sign yields [A, B].
cplx bracket_weight(const SpinSpace& s, const PhaseTable& ph, long long a1, long long a2,
                    long long b1, long long b2, Bracket kind) {
  const cplx e = ph.half(a1 * b2 - a2 * b1);
  const cplx trig = kind == Bracket::anticommutator ? cplx(e.real(), 0.0) : cplx(0.0, -e.imag());
  return trig * double(reduction_sign(s, a1 + b1, a2 + b2));
}

}  // namespace

PhaseGrid bracket_convolution(const PhaseGrid& a, const PhaseGrid& b, Bracket kind) {
  require_same(a.space, b.space);
  const SpinSpace& s = a.space;
  const int n = s.dim, ell = s.ell, pts = s.points();
  const PhaseTable ph(n);
  auto dot = [&](int p, int q) {  // eta*mu + xi*nu for flat indices p=(eta,xi), q=(mu,nu)
    return static_cast<long long>(p / n - ell) * (q / n - ell) +
           static_cast<long long>(p % n - ell) * (q % n - ell);
  };
  Mat FA(pts, pts), FB(pts, pts);
  for (int al = 0; al < pts; ++al) {
    cplx ta = 0.0, tb = 0.0;
    for (int q = 0; q < pts; ++q) {
      ta += ph.omega(-dot(al, q)) * a.values(q);
      tb += ph.omega(-dot(al, q)) * b.values(q);
    }
    for (int mu = 0; mu < pts; ++mu) {
      FA(al, mu) = ph.omega(dot(al, mu)) * ta;
      FB(al, mu) = ph.omega(dot(al, mu)) * tb;
    }
  }
  Mat T(pts, pts);
  for (int al = 0; al < pts; ++al)
    for (int be = 0; be < pts; ++be)
      T(al, be) = bracket_weight(s, ph, al / n - ell, al % n - ell, be / n - ell, be % n - ell, kind);
  PhaseGrid out{s, GridKind::mapped_complex, Vec::Zero(pts)};
  const double pre = 2.0 / std::pow(double(n), 4);
  for (int mu = 0; mu < pts; ++mu) {
    cplx acc = 0.0;
    for (int al = 0; al < pts; ++al)
      for (int be = 0; be < pts; ++be) acc += T(al, be) * FA(al, mu) * FB(be, mu);
    out.values(mu) = pre * acc;
  }
  return out;
}

PhaseGrid bracket_convolution_bruteforce(const PhaseGrid& a, const PhaseGrid& b, Bracket kind) {
  require_same(a.space, b.space);
  const SpinSpace& s = a.space;
  const int n = s.dim, ell = s.ell;
  const PhaseTable ph(n);
  const double n2 = double(n) * n;
  PhaseGrid out{s, GridKind::mapped_complex, Vec::Zero(s.points())};
  for (int mu = -ell; mu <= ell; ++mu)
    for (int nu = -ell; nu <= ell; ++nu) {
      cplx total = 0.0;
      for (int m1 = -ell; m1 <= ell; ++m1)
        for (int n1 = -ell; n1 <= ell; ++n1)
          for (int m2 = -ell; m2 <= ell; ++m2)
            for (int n2i = -ell; n2i <= ell; ++n2i) {
              cplx gamma = 0.0;
              for (int e1 = -ell; e1 <= ell; ++e1)
                for (int x1 = -ell; x1 <= ell; ++x1)
                  for (int e2 = -ell; e2 <= ell; ++e2)
                    for (int x2 = -ell; x2 <= ell; ++x2)
                      gamma += ph.omega(e1 * (mu - m1) + x1 * (nu - n1)) *
                               ph.omega(e2 * (mu - m2) + x2 * (nu - n2i)) *
                               bracket_weight(s, ph, e1, x1, e2, x2, kind);
              gamma *= 2.0 / n2;
              total += gamma * a.at(m1, n1) * b.at(m2, n2i);
            }
      out.values(s.flat(mu, nu)) = total / n2;
    }
  return out;
}

PhaseGrid coherent_weyl(const CoherentParams& p, const SpinSpace& space) {
  space.require_odd();
  const Vec c = coherent_state(space, p);
  const PhaseTable ph(space.dim);
  const int ell = space.ell;
  PhaseGrid out{space, GridKind::weyl_complex, Vec::Zero(space.points())};
  const double norm = 1.0 / std::sqrt(double(space.dim));
  for (long long eta = -ell; eta <= ell; ++eta)
    for (long long xi = -ell; xi <= ell; ++xi) {
      cplx s = 0.0;
      for (long long m = -ell; m <= ell; ++m) {
        // exp(2 pi i eta (m - xi/2) / N) <p|m - xi><m|p>, m - xi taken mod N
        const cplx phase = ph.omega(eta * m) * ph.half(-eta * xi);
        s += phase * std::conj(c(space.index(m - xi))) * c(space.index(m));
      }
      out.values(space.flat(eta, xi)) = norm * s;
    }
  return out;
}

PhaseGrid coherent_wigner(const CoherentParams& p, const KernelSet& ks) {
  return weyl_to_wigner(coherent_weyl(p, ks.space), ks, Exec::serial);
}

Eigen::MatrixXd as_real_matrix(const PhaseGrid& g) {
  const int n = g.space.dim;
  Eigen::MatrixXd out(n, n);
  for (int p = 0; p < g.space.points(); ++p) out(p / n, p % n) = g.values(p).real();
  return out;
}

}  // namespace phasec
