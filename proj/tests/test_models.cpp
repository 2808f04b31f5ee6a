#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "phasec/dynamics.hpp"
#include "phasec/models.hpp"

using namespace phasec;
using std::numbers::pi;

namespace {

template <class A, class B>
double dist(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("LMG Hamiltonian forms") {
  const SpinSpace s = SpinSpace::from_two_j(10);
  const Generators g = build_generators(s);
  LmgParams p;
  p.n_spins = 10;
  p.h = -0.3;
  p.gamma = 0.4;
  p.lambda = 1.5;
  const Mat H1 = lmg_hamiltonian(p, s);
  CHECK(hermiticity_defect(H1) < 1e-14);
  CHECK(dist(H1, 0.3 * g.Jz - 0.15 * (g.Jx * g.Jx + 0.4 * g.Jy * g.Jy)) < 1e-13);

  p.field_scale = 2.0;
  CHECK(dist(lmg_hamiltonian(p, s), 0.6 * g.Jz - 0.15 * (g.Jx * g.Jx + 0.4 * g.Jy * g.Jy)) < 1e-13);

  // ladder form = field-scale-2 form with doubled coupling plus lambda (1 + gamma)/2
  p.full_form = true;
  const Mat I = Mat::Identity(s.dim, s.dim);
  const Mat want = 0.6 * g.Jz - 0.3 * (g.Jx * g.Jx + 0.4 * g.Jy * g.Jy) + 1.5 * 1.4 / 2 * I;
  CHECK(dist(lmg_hamiltonian(p, s), want) < 1e-12);
}

TEST_CASE("LMG parameter validation") {
  LmgParams p;
  p.n_spins = 7;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.n_spins = 8;
  p.gamma = 1.2;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.gamma = 1.0;
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(lmg_hamiltonian(p, SpinSpace::from_two_j(6)), DomainError);
}

TEST_CASE("twisting closed forms match matrix evolution") {
  std::vector<double> taus;
  for (int k = 0; k <= 80; ++k) taus.push_back(0.08 * k);
  for (int two_j : {1, 2, 3, 4, 6, 9})
    for (CoherentParams cp : {CoherentParams{pi / 4, pi / 4}, CoherentParams{pi / 2, 0.0},
                              CoherentParams{2.5, -1.0}}) {
      const KuComparison c = ku_numeric_vs_analytic({1.0, two_j}, cp, taus);
      INFO("2j=", two_j, " worst ", c.worst_field, " at tau=", c.worst_tau);
      CHECK(c.max_deviation < 1e-10);
    }
  // chi rescales time only
  CHECK(ku_numeric_vs_analytic({0.5, 4}, {pi / 4, pi / 4}, taus).max_deviation < 1e-10);
  CHECK_THROWS_AS(ku_numeric_vs_analytic({0.0, 4}, {pi / 4, pi / 4}, taus), DomainError);
}

TEST_CASE("twisting moments at tau = 0 are coherent-state moments") {
  const CoherentParams cp{0.9, 0.6};
  const MomentReport m = ku_analytic_moments({1.0, 4}, cp, 0.0);
  const double j = 2.0;
  CHECK(m.mean[0] == doctest::Approx(j * std::sin(0.9) * std::cos(0.6)));
  CHECK(m.mean[1] == doctest::Approx(j * std::sin(0.9) * std::sin(0.6)));
  CHECK(m.mean[2] == doctest::Approx(-j * std::cos(0.9)));
  // Jz is conserved by the twisting Hamiltonian
  const MomentReport later = ku_analytic_moments({1.0, 4}, cp, 2.2);
  CHECK(later.mean[2] == doctest::Approx(m.mean[2]));
  CHECK(later.var[2] == doctest::Approx(m.var[2]));
  CHECK(std::isnan(later.cov[1]));
}

TEST_CASE("twisting Hamiltonian is chi Jz^2") {
  const SpinSpace s = SpinSpace::from_two_j(4);
  const Generators g = build_generators(s);
  CHECK(dist(ku_hamiltonian({0.7, 4}, s), 0.7 * g.Jz * g.Jz) < 1e-15);
}
