#include "phasec/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "phasec/linalg.hpp"

namespace phasec {

DensityState DensityState::pure(const SpinSpace& space, const Vec& psi) {
  if (psi.size() != space.dim) throw DomainError("state vector has wrong length");
  const Vec v = psi / psi.norm();
  return {space, v * v.adjoint()};
}

DensityState DensityState::maximally_mixed(const SpinSpace& space) {
  return {space, Mat::Identity(space.dim, space.dim) / double(space.dim)};
}

void DensityState::validate(double tol) const {
  if (rho.rows() != space.dim || rho.cols() != space.dim)
    throw DomainError("density matrix dimension mismatch");
  if (hermiticity_defect(rho) > tol) throw DomainError("density matrix is not hermitian");
  if (std::abs(rho.trace() - 1.0) > tol) throw DomainError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw DomainError("density matrix has a negative eigenvalue");
}

double DensityState::purity() const { return (rho * rho).trace().real(); }

ExactEvolver::ExactEvolver(const Mat& H, const DensityState& rho0) : space_(rho0.space) {
  if (hermiticity_defect(H) > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
    throw DomainError("Hamiltonian is not hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  vecs_ = es.eigenvectors();
  energies_ = es.eigenvalues();
  rho0_eig_ = vecs_.adjoint() * rho0.rho * vecs_;
}

DensityState ExactEvolver::at(double t) const {
  const int n = space_.dim;
  Mat r(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      r(k, l) = rho0_eig_(k, l) * std::polar(1.0, -(energies_(k) - energies_(l)) * t);
  return {space_, vecs_ * r * vecs_.adjoint()};
}

Trajectory evolve_exact(const Mat& H, const DensityState& rho0, const std::vector<double>& times) {
  ExactEvolver ev(H, rho0);
  Trajectory tr;
  tr.times = times;
  for (double t : times) tr.frames.push_back(ev.at(t));
  return tr;
}

LiouvilleKernel build_liouville(const Mat& H, const KernelSet& ks, Representation rep, Exec exec) {
  const SpinSpace& s = ks.space;
  if (H.rows() != s.dim) throw DomainError("Hamiltonian dimension mismatch");
  if (hermiticity_defect(H) > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
    throw DomainError("Hamiltonian is not hermitian");
  const int n = s.dim, pts = s.points(), ell = s.ell;
  LiouvilleKernel k{s, rep, Mat()};

  if (rep == Representation::wigner) {
    // rows: Tr[G_p X] as a dot product with vec(X); columns: vec([H, G_q])
    Mat trG(pts, n * n), comm(n * n, pts);
    for (int p = 0; p < pts; ++p) {
      const Mat& g = ks.G[p];
      const Mat c = H * g - g * H;
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          trG(p, a + b * n) = g(b, a);
          comm(a + b * n, p) = c(a, b);
        }
    }
    k.matrix = dense_matmul(trG, comm, exec) / double(n);
    return k;
  }

  // Tr[S(d) H] for unreduced differences d in [-2 ell, 2 ell]^2
  const int span = 4 * ell + 1;
  Mat htab(span, span);
  for (int d1 = -2 * ell; d1 <= 2 * ell; ++d1)
    for (int d2 = -2 * ell; d2 <= 2 * ell; ++d2)
      htab(d1 + 2 * ell, d2 + 2 * ell) = (ks.schwinger_at(d1, d2) * H).trace();
  const cplx pre(0.0, 2.0 / std::sqrt(double(n)));
  k.matrix.resize(pts, pts);
  auto row = [&](int p) {
    const long long eta = p / n - ell, xi = p % n - ell;
    for (int q = 0; q < pts; ++q) {
      const long long eta1 = q / n - ell, xi1 = q % n - ell;
      const double sn = ks.phases.half(eta1 * xi - xi1 * eta).imag();
      k.matrix(p, q) = pre * sn * htab(eta - eta1 + 2 * ell, xi - xi1 + 2 * ell);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int p = 0; p < pts; ++p) row(p);
  } else {
    for (int p = 0; p < pts; ++p) row(p);
  }
  return k;
}

Mat liouville_six_index(const Mat& H, const KernelSet& ks) {
  const SpinSpace& s = ks.space;
  const int n = s.dim, ell = s.ell, pts = s.points();
  const PhaseTable& ph = ks.phases;
  std::vector<cplx> hmap(pts);
  for (int p = 0; p < pts; ++p) hmap[p] = (ks.G[p] * H).trace();

  // hh(a', b'; mu, nu) = sum_{mu'', nu''} e^{2 pi i [a'(mu - mu'') + b'(nu - nu'')]/N} H(mu'', nu'')
  Mat hh(pts, pts);
  for (int ap = 0; ap < pts; ++ap) {
    const long long a1 = ap / n - ell, b1 = ap % n - ell;
    for (int q = 0; q < pts; ++q) {
      const long long mu = q / n - ell, nu = q % n - ell;
      cplx acc = 0.0;
      for (int r = 0; r < pts; ++r)
        acc += ph.omega(a1 * (mu - (r / n - ell)) + b1 * (nu - (r % n - ell))) * hmap[r];
      hh(ap, q) = acc;
    }
  }

  Mat L(pts, pts);
  const cplx pre = cplx(0.0, 2.0) / std::pow(double(n), 4);
  for (int p = 0; p < pts; ++p) {
    const long long mu = p / n - ell, nu = p % n - ell;
    for (int q = 0; q < pts; ++q) {
      const long long mu1 = q / n - ell, nu1 = q % n - ell;
      cplx acc = 0.0;
      for (long long al = -ell; al <= ell; ++al)
        for (long long be = -ell; be <= ell; ++be) {
          const cplx phase = ph.omega(al * (mu - mu1) + be * (nu - nu1));
          for (long long al1 = -ell; al1 <= ell; ++al1)
            for (long long be1 = -ell; be1 <= ell; ++be1) {
              // The sine comes from S(-al,-be) S(-al',-be') ~ S(-(al+al'), -(be+be')).
              // When that label sum leaves [-ell, ell] it is folded back with a sign.
              const long long ar = s.reduce(-(al + al1)), br = s.reduce(-(be + be1));
              const double sign = reduction_sign(s, ar + al, br + be);
              const double sn = ph.half((-al) * br - (-be) * ar).imag();
              acc += sign * sn * phase * hh(s.flat(al1, be1), p);
            }
        }
      L(p, q) = pre * acc;
    }
  }
  return L;
}

Mat liouville_weyl_operator_form(const Mat& H, const KernelSet& ks) {
  const int pts = ks.space.points();
  Mat L(pts, pts);
  for (int p = 0; p < pts; ++p)
    for (int q = 0; q < pts; ++q) {
      const Mat sd = ks.S[q].adjoint();
      L(p, q) = (ks.S[p] * (H * sd - sd * H)).trace();
    }
  return L;
}

SeriesResult propagate_series(const LiouvilleKernel& kernel, const PhaseGrid& grid0, double t,
                              double t0, int order) {
  if (order < 1) throw DomainError("series order must be at least 1");
  if (!(kernel.space == grid0.space)) throw DomainError("kernel and grid spaces differ");
  const cplx step(0.0, -(t - t0));
  Vec term = grid0.values, sum = grid0.values;
  int k = 1;
  for (; k <= order; ++k) {
    term = (step / double(k)) * (kernel.matrix * term);
    sum += term;
  }
  SeriesResult r;
  r.grid = {grid0.space, grid0.kind, sum};
  r.terms = order + 1;
  r.last_term_norm = term.norm();
  r.converged = r.last_term_norm <= 1e-12 * std::max(1.0, sum.norm());
  return r;
}

Propagator::Propagator(const LiouvilleKernel& kernel) : kernel_(kernel) {
  const double scale = std::max(1.0, kernel.matrix.cwiseAbs().maxCoeff());
  if (hermiticity_defect(kernel.matrix) > 1e-9 * scale)
    throw IntegrityError("Liouville kernel is not hermitian");
  const Mat h = (kernel.matrix + kernel.matrix.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  vecs_ = es.eigenvectors();
  vals_ = es.eigenvalues();
}

PhaseGrid Propagator::apply(const PhaseGrid& grid0, double t, double t0) const {
  if (!(kernel_.space == grid0.space)) throw DomainError("kernel and grid spaces differ");
  Vec c = vecs_.adjoint() * grid0.values;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -vals_(k) * (t - t0));
  PhaseGrid out{grid0.space, grid0.kind, vecs_ * c};
  if (out.kind == GridKind::wigner_real) {
    if (out.max_imag() > 1e-8) throw IntegrityError("propagated Wigner grid is not real");
    out.values = out.values.real().cast<cplx>();
  }
  return out;
}

PhaseGrid propagate_exponential(const LiouvilleKernel& kernel, const PhaseGrid& grid0, double t,
                                double t0) {
  return Propagator(kernel).apply(grid0, t, t0);
}

double fidelity(const DensityState& rho0, const DensityState& rhot) {
  if (!(rho0.space == rhot.space)) throw DomainError("fidelity: spaces differ");
  const cplx f = (rho0.rho * rhot.rho).trace();
  if (std::abs(f.imag()) > 1e-10) throw IntegrityError("fidelity has an imaginary part");
  return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace phasec
