#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "phasec/dynamics.hpp"
#include "phasec/models.hpp"

using namespace phasec;
using std::numbers::pi;

namespace {

template <class A, class B>
double dist(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Mat random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat A(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = cplx(g(rng), g(rng));
  return (A + A.adjoint()) / 2.0;
}

Mat lmg(int n_spins, double h, double gamma) {
  LmgParams p;
  p.n_spins = n_spins;
  p.h = h;
  p.gamma = gamma;
  p.field_scale = 2.0;
  return lmg_hamiltonian(p, SpinSpace::from_two_j(n_spins));
}

}  // namespace

TEST_CASE("Wigner kernel trace form equals the six-index Fourier sum") {
  std::mt19937_64 rng(1);
  for (int n : {3, 5}) {
    const KernelSet ks = build_kernels(SpinSpace::from_dim(n));
    const Mat H = random_hermitian(n, rng);
    const LiouvilleKernel L = build_liouville(H, ks, Representation::wigner);
    CHECK(dist(L.matrix, liouville_six_index(H, ks)) < 1e-10);
    CHECK(hermiticity_defect(L.matrix) < 1e-12);
  }
}

TEST_CASE("Weyl kernel equals its operator-space form") {
  std::mt19937_64 rng(2);
  for (int n : {3, 5, 7}) {
    const KernelSet ks = build_kernels(SpinSpace::from_dim(n));
    const Mat H = random_hermitian(n, rng);
    const LiouvilleKernel L = build_liouville(H, ks, Representation::weyl);
    CHECK(dist(L.matrix, liouville_weyl_operator_form(H, ks)) < 1e-12);
    CHECK(hermiticity_defect(L.matrix) < 1e-12);
  }
}

TEST_CASE("rotation about z moves a coherent state in azimuth") {
  // exp(-i t Jz) |theta, phi> = phase * |theta, phi + t>
  const SpinSpace s = SpinSpace::from_two_j(6);
  const KernelSet ks = build_kernels(s);
  const Mat H = build_generators(s).Jz;
  const CoherentParams p{1.1, 0.3};
  const PhaseGrid w0 = coherent_wigner(p, ks);
  const Propagator wig(build_liouville(H, ks, Representation::wigner));
  const Propagator wey(build_liouville(H, ks, Representation::weyl));
  for (double t : {0.4, 1.7, 3.0}) {
    const PhaseGrid want = coherent_wigner({p.theta, p.phi + t}, ks);
    CHECK(dist(wig.apply(w0, t).values, want.values) < 1e-12);
    const PhaseGrid via_weyl = weyl_to_wigner(wey.apply(coherent_weyl(p, s), t), ks);
    CHECK(dist(via_weyl.values, want.values) < 1e-12);
  }
}

TEST_CASE("propagators agree with exact evolution for LMG") {
  const SpinSpace s = SpinSpace::from_two_j(6);
  const KernelSet ks = build_kernels(s);
  const Mat H = lmg(6, -0.1, 0.2);
  const DensityState r0 = DensityState::pure(s, coherent_state(s, {pi / 2, 0.0}));
  const ExactEvolver ev(H, r0);
  const Propagator wig(build_liouville(H, ks, Representation::wigner));
  const Propagator wey(build_liouville(H, ks, Representation::weyl));
  const PhaseGrid w0 = wigner_of_state(r0.rho, ks), y0 = weyl_of_state(r0.rho, ks);
  for (double t : {0.0, 0.5, 2.15, 9.95}) {
    const PhaseGrid exact = wigner_of_state(ev.at(t).rho, ks);
    CHECK(dist(wig.apply(w0, t).values, exact.values) < 1e-10);
    CHECK(dist(weyl_to_wigner(wey.apply(y0, t), ks).values, exact.values) < 1e-10);
    // time origin only enters through t - t0
    CHECK(dist(wig.apply(w0, t + 1.0, 1.0).values, exact.values) < 1e-10);
  }
}

TEST_CASE("series with the forward sign converges to exact evolution") {
  const SpinSpace s = SpinSpace::from_two_j(4);
  const KernelSet ks = build_kernels(s);
  const Mat H = lmg(4, -0.1, 0.2);
  const DensityState r0 = DensityState::pure(s, coherent_state(s, {pi / 3, 0.4}));
  const ExactEvolver ev(H, r0);
  const LiouvilleKernel L = build_liouville(H, ks, Representation::wigner);
  const PhaseGrid w0 = wigner_of_state(r0.rho, ks);
  const double t = 1.3;
  const SeriesResult sr = propagate_series(L, w0, t, 0.0, 60);
  CHECK(sr.converged);
  CHECK(sr.terms <= 61);
  const PhaseGrid exact = wigner_of_state(ev.at(t).rho, ks);
  CHECK(dist(sr.grid.values, exact.values) < 1e-10);
  // the opposite sign is backward evolution
  CHECK(dist(wigner_of_state(ev.at(-t).rho, ks).values, propagate_series(L, w0, -t, 0.0, 60).grid.values) < 1e-10);
  CHECK(dist(sr.grid.values, wigner_of_state(ev.at(-t).rho, ks).values) > 1e-3);
  // too few terms are reported as unconverged
  CHECK_FALSE(propagate_series(L, w0, 20.0, 0.0, 3).converged);
  CHECK(dist(propagate_exponential(L, w0, t, 0.0).values, exact.values) < 1e-10);
}

TEST_CASE("exact evolution conserves trace, purity and energy") {
  const SpinSpace s = SpinSpace::from_two_j(8);
  const Mat H = lmg(8, 0.3, -0.5);
  const DensityState r0 = DensityState::pure(s, coherent_state(s, {0.7, 1.1}));
  const double e0 = (r0.rho * H).trace().real();
  const Trajectory tr = evolve_exact(H, r0, {0.0, 1.0, 5.0, 25.0});
  for (const auto& f : tr.frames) {
    CHECK(std::abs(f.rho.trace() - 1.0) < 1e-12);
    CHECK(f.purity() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((f.rho * H).trace().real() == doctest::Approx(e0).epsilon(1e-12));
    f.validate();
  }
  CHECK(fidelity(r0, tr.frames[0]) == doctest::Approx(1.0));
  const DensityState mixed = DensityState::maximally_mixed(s);
  CHECK(mixed.purity() == doctest::Approx(1.0 / s.dim));
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0 / s.dim));
}

TEST_CASE("invalid states and Hamiltonians are rejected") {
  const SpinSpace s = SpinSpace::from_two_j(2);
  DensityState d{s, Mat::Identity(3, 3)};
  CHECK_THROWS_AS(d.validate(), DomainError);
  Mat neg = Mat::Zero(3, 3);
  neg(0, 0) = 2.0;
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS((DensityState{s, neg}.validate()), DomainError);
  Mat nh = Mat::Zero(3, 3);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(ExactEvolver(nh, DensityState::maximally_mixed(s)), DomainError);
  CHECK_THROWS_AS(build_liouville(nh, build_kernels(s), Representation::wigner), DomainError);
  CHECK_THROWS_AS(DensityState::pure(s, Vec::Ones(4)), DomainError);
}

TEST_CASE("serial and parallel Liouville kernels are bitwise identical") {
  const SpinSpace s = SpinSpace::from_two_j(12);
  const KernelSet ks = build_kernels(s);
  const Mat H = lmg(12, -0.1, 0.2);
  for (auto rep : {Representation::wigner, Representation::weyl})
    CHECK(build_liouville(H, ks, rep, Exec::serial).matrix == build_liouville(H, ks, rep, Exec::parallel).matrix);
}
