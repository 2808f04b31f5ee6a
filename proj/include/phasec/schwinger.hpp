#pragma once

#include <vector>

#include "phasec/spin_space.hpp"
#include "phasec/su2.hpp"

namespace phasec {

enum class GridKind { wigner_real, weyl_complex, mapped_complex };

// N*N values on the symmetric label square; flat index (a+ell)*N + (b+ell).
// For Wigner/Husimi grids the labels are (mu, nu); for Weyl grids (eta, xi).
struct PhaseGrid {
  SpinSpace space;
  GridKind kind = GridKind::mapped_complex;
  Vec values;

  cplx at(long long a, long long b) const { return values(space.flat(a, b)); }
  double max_imag() const { return values.imag().cwiseAbs().maxCoeff(); }
  // (1/N) sum of values
  cplx normalization() const { return values.sum() / double(space.dim); }
};

// Exact phase factors exp(2 pi i k / N) and exp(i pi k / N) from integer exponents.
class PhaseTable {
 public:
  explicit PhaseTable(int n);
  cplx omega(long long k) const;  // exp(2 pi i k / N)
  cplx half(long long k) const;   // exp(i pi k / N)
 private:
  int n_;
  std::vector<cplx> half_;
};

struct KernelSet {
  SpinSpace space;
  PhaseTable phases{1};
  Mat U, V;
  std::vector<Mat> S;  // S(eta, xi) at flat(eta, xi)
  std::vector<Mat> G;  // G(mu, nu) at flat(mu, nu)
  // rows give traces against a column-major vectorized operator:
  //   (adj_G * vec(O))(p) = Tr[G_p^dagger O],  (tr_S * vec(O))(p) = Tr[S_p O]
  Mat adj_G, tr_S;
  // W(mu,nu) = (fourier * weyl)(mu,nu)
  Mat fourier;

  // S evaluated by its defining formula at arbitrary (unreduced) labels
  Mat schwinger_at(long long eta, long long xi) const;
};

KernelSet build_kernels(const SpinSpace& space, Exec exec = Exec::parallel);

double kernel_invariant_defect(const KernelSet& ks);

// Sign picked up when a label pair outside [-ell, ell] is folded back:
// S(c1, c2) = reduction_sign(c1, c2) * S(reduce(c1), reduce(c2)).
int reduction_sign(const SpinSpace& space, long long c1, long long c2);

PhaseGrid map_operator(const Mat& O, const KernelSet& ks, Exec exec = Exec::parallel);
Mat operator_from_grid(const PhaseGrid& g, const KernelSet& ks);

PhaseGrid wigner_of_state(const Mat& rho, const KernelSet& ks, Exec exec = Exec::parallel);
PhaseGrid weyl_of_state(const Mat& rho, const KernelSet& ks, Exec exec = Exec::parallel);
PhaseGrid weyl_to_wigner(const PhaseGrid& weyl, const KernelSet& ks, Exec exec = Exec::parallel);
PhaseGrid wigner_to_weyl(const PhaseGrid& wigner, const KernelSet& ks, Exec exec = Exec::parallel);
Mat density_from_weyl(const PhaseGrid& weyl, const KernelSet& ks);

cplx mean_value(const PhaseGrid& op, const PhaseGrid& wigner);

// <j,m|G(mu,nu)|j,m'> from its closed-form single sum, with m'-m reduced into [-ell, ell]
cplx mapping_kernel_element(const SpinSpace& space, int m, int m_prime, int mu, int nu);

PhaseGrid map_anticommutator(const Mat& A, const Mat& B, const KernelSet& ks,
                             Exec exec = Exec::parallel);
PhaseGrid map_commutator(const Mat& A, const Mat& B, const KernelSet& ks,
                         Exec exec = Exec::parallel);

enum class Bracket { anticommutator, commutator };

// Double phase-space convolution of two mapped operators with the cosine (or sine)
// kernel, evaluated through Fourier-factored sums. Small-N oracle.
PhaseGrid bracket_convolution(const PhaseGrid& a, const PhaseGrid& b, Bracket kind);
// Same sum with every one of the eight indices looped explicitly.
PhaseGrid bracket_convolution_bruteforce(const PhaseGrid& a, const PhaseGrid& b, Bracket kind);

// Tr[S(eta,xi) |p><p|] from the explicit single sum over m
PhaseGrid coherent_weyl(const CoherentParams& p, const SpinSpace& space);
PhaseGrid coherent_wigner(const CoherentParams& p, const KernelSet& ks);

// flat vector of a grid as a plain real matrix indexed (mu+ell, nu+ell)
Eigen::MatrixXd as_real_matrix(const PhaseGrid& g);

}  // namespace phasec
