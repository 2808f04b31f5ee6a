#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "phasec/schwinger.hpp"

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

Mat random_density(int n, std::mt19937_64& rng) {
  const Mat A = random_hermitian(n, rng);
  Mat rho = A * A.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("clock and shift form a Weyl pair") {
  for (int n : {3, 5, 7}) {
    const KernelSet ks = build_kernels(SpinSpace::from_dim(n));
    const cplx w = std::polar(1.0, 2 * pi / n);
    CHECK(dist(ks.V * ks.U, w * ks.U * ks.V) < 1e-13);
    Mat Un = Mat::Identity(n, n), Vn = Mat::Identity(n, n);
    for (int k = 0; k < n; ++k) {
      Un = Un * ks.U;
      Vn = Vn * ks.V;
    }
    CHECK(dist(Vn, Mat::Identity(n, n)) < 1e-13);
    // U^N = (-1)^{2j} I  for integer j gives the identity
    CHECK(dist(Un, Mat::Identity(n, n)) < 1e-12);
  }
}

TEST_CASE("Schwinger and phase-point bases are orthonormal") {
  for (int n : {3, 5, 9}) {
    const SpinSpace s = SpinSpace::from_dim(n);
    const KernelSet ks = build_kernels(s);
    double s_err = 0.0, g_err = 0.0, herm = 0.0, tr = 0.0;
    for (int p = 0; p < s.points(); ++p) {
      herm = std::max(herm, hermiticity_defect(ks.G[p]));
      tr = std::max(tr, std::abs(ks.G[p].trace() - 1.0));
      for (int q = 0; q < s.points(); ++q) {
        const double want = p == q ? 1.0 : 0.0;
        s_err = std::max(s_err, std::abs((ks.S[p].adjoint() * ks.S[q]).trace() - want));
        g_err = std::max(g_err, std::abs((ks.G[p] * ks.G[q]).trace() - n * want));
      }
    }
    CHECK(s_err < 1e-13);
    CHECK(g_err < 1e-12);
    CHECK(herm < 1e-14);
    CHECK(tr < 1e-13);
    CHECK(kernel_invariant_defect(ks) < 1e-12);
  }
}

TEST_CASE("closed-form kernel elements match the Fourier-built operators") {
  const SpinSpace s = SpinSpace::from_dim(5);
  const KernelSet ks = build_kernels(s);
  // brute force: G = N^{-1/2} sum exp(-2 pi i (eta mu + xi nu)/N) S(eta, xi)
  double err = 0.0, elem = 0.0;
  for (int mu = -2; mu <= 2; ++mu)
    for (int nu = -2; nu <= 2; ++nu) {
      Mat G = Mat::Zero(5, 5);
      for (int eta = -2; eta <= 2; ++eta)
        for (int xi = -2; xi <= 2; ++xi)
          G += std::polar(1.0, -2 * pi * (eta * mu + xi * nu) / 5) * ks.S[s.flat(eta, xi)];
      G /= std::sqrt(5.0);
      err = std::max(err, dist(G, ks.G[s.flat(mu, nu)]));
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          elem = std::max(elem, std::abs(mapping_kernel_element(s, a - 2, b - 2, mu, nu) - G(a, b)));
    }
  CHECK(err < 1e-13);
  CHECK(elem < 1e-13);
}

TEST_CASE("unreduced labels fold back with the reduction sign") {
  for (int n : {3, 5}) {
    const SpinSpace s = SpinSpace::from_dim(n);
    const KernelSet ks = build_kernels(s);
    double err = 0.0;
    for (int c1 = -2 * n; c1 <= 2 * n; ++c1)
      for (int c2 = -2 * n; c2 <= 2 * n; ++c2)
        err = std::max(err, dist(ks.schwinger_at(c1, c2),
                                 double(reduction_sign(s, c1, c2)) * ks.S[s.flat(c1, c2)]));
    CHECK(err < 1e-13);
  }
}

TEST_CASE("pole states have Wigner functions supported on one row") {
  for (int two_j : {2, 4, 20}) {
    const SpinSpace s = SpinSpace::from_two_j(two_j);
    const KernelSet ks = build_kernels(s);
    for (int pole : {-1, 1}) {
      Vec psi = Vec::Zero(s.dim);
      psi(pole < 0 ? 0 : s.dim - 1) = 1.0;
      const PhaseGrid w = wigner_of_state(psi * psi.adjoint(), ks);
      const int row = pole * s.ell;
      double on = 0.0, off = 0.0;
      for (int mu = -s.ell; mu <= s.ell; ++mu)
        for (int nu = -s.ell; nu <= s.ell; ++nu) {
          const double v = w.at(mu, nu).real();
          if (mu == row) on = std::max(on, std::abs(v - 1.0));
          else off = std::max(off, std::abs(v));
        }
      CHECK(on < 1e-12);
      CHECK(off < 1e-12);
    }
  }
}

TEST_CASE("Wigner, Weyl and density matrix round trips") {
  std::mt19937_64 rng(9);
  for (int n : {3, 5, 7}) {
    const KernelSet ks = build_kernels(SpinSpace::from_dim(n));
    const Mat rho = random_density(n, rng);
    const PhaseGrid w = wigner_of_state(rho, ks);
    const PhaseGrid wt = weyl_of_state(rho, ks);
    CHECK(w.max_imag() == 0.0);
    CHECK(std::abs(w.normalization() - 1.0) < 1e-13);
    CHECK(dist(weyl_to_wigner(wt, ks).values, w.values) < 1e-13);
    CHECK(dist(wigner_to_weyl(w, ks).values, wt.values) < 1e-13);
    CHECK(dist(density_from_weyl(wt, ks), rho) < 1e-13);
    CHECK(dist(operator_from_grid(w, ks), rho) < 1e-13);
    const Mat A = random_hermitian(n, rng);
    CHECK(std::abs(mean_value(map_operator(A, ks), w) - (rho * A).trace()) < 1e-12);
  }
  const KernelSet ks = build_kernels(SpinSpace::from_dim(3));
  Mat bad = Mat::Zero(3, 3);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(wigner_of_state(bad, ks), DomainError);
  CHECK_THROWS_AS(wigner_of_state(Mat::Identity(5, 5), ks), DomainError);
}

TEST_CASE("coherent-state closed forms match the mapped density matrix") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> th(0, pi), ph(-pi, pi);
  for (int two_j : {2, 6}) {
    const SpinSpace s = SpinSpace::from_two_j(two_j);
    const KernelSet ks = build_kernels(s);
    for (int trial = 0; trial < 4; ++trial) {
      const CoherentParams p{th(rng), ph(rng)};
      const Vec psi = coherent_state(s, p);
      const Mat rho = psi * psi.adjoint();
      CHECK(dist(coherent_weyl(p, s).values, weyl_of_state(rho, ks).values) < 1e-13);
      CHECK(dist(coherent_wigner(p, ks).values, wigner_of_state(rho, ks).values) < 1e-13);
    }
  }
}

TEST_CASE("bracket convolutions equal the mapped (anti)commutators") {
  std::mt19937_64 rng(12);
  const KernelSet ks3 = build_kernels(SpinSpace::from_dim(3));
  for (int trial = 0; trial < 2; ++trial) {
    const Mat A = random_hermitian(3, rng), B = random_hermitian(3, rng);
    const PhaseGrid a = map_operator(A, ks3), b = map_operator(B, ks3);
    const PhaseGrid anti = map_anticommutator(A, B, ks3), comm = map_commutator(A, B, ks3);
    CHECK(dist(anti.values, map_operator(A * B + B * A, ks3).values) < 1e-13);
    CHECK(dist(comm.values, map_operator(A * B - B * A, ks3).values) < 1e-13);
    CHECK(dist(bracket_convolution_bruteforce(a, b, Bracket::anticommutator).values, anti.values) < 1e-10);
    CHECK(dist(bracket_convolution_bruteforce(a, b, Bracket::commutator).values, comm.values) < 1e-10);
    CHECK(dist(bracket_convolution(a, b, Bracket::anticommutator).values, anti.values) < 1e-10);
    CHECK(dist(bracket_convolution(a, b, Bracket::commutator).values, comm.values) < 1e-10);
  }
  const KernelSet ks5 = build_kernels(SpinSpace::from_dim(5));
  const Mat A = random_hermitian(5, rng), B = random_hermitian(5, rng);
  const PhaseGrid a = map_operator(A, ks5), b = map_operator(B, ks5);
  CHECK(dist(bracket_convolution(a, b, Bracket::anticommutator).values,
             map_anticommutator(A, B, ks5).values) < 1e-10);
  CHECK(dist(bracket_convolution(a, b, Bracket::commutator).values,
             map_commutator(A, B, ks5).values) < 1e-10);
}

TEST_CASE("serial and parallel kernels are bitwise identical") {
  std::mt19937_64 rng(13);
  const SpinSpace s = SpinSpace::from_dim(11);
  const KernelSet a = build_kernels(s, Exec::serial), b = build_kernels(s, Exec::parallel);
  bool same = true;
  for (int p = 0; p < s.points(); ++p) same = same && a.G[p] == b.G[p];
  CHECK(same);
  CHECK(a.adj_G == b.adj_G);
  const Mat rho = random_density(11, rng);
  CHECK(map_operator(rho, a, Exec::serial).values == map_operator(rho, a, Exec::parallel).values);
  CHECK(wigner_of_state(rho, a, Exec::serial).values == wigner_of_state(rho, a, Exec::parallel).values);
}

TEST_CASE("even dimensions are rejected") {
  CHECK_THROWS_AS(build_kernels(SpinSpace::from_dim(4)), DomainError);
}
