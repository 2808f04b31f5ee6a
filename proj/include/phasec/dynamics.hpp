#pragma once

#include <vector>

#include "phasec/schwinger.hpp"

namespace phasec {

struct DensityState {
  SpinSpace space;
  Mat rho;

  static DensityState pure(const SpinSpace& space, const Vec& psi);
  static DensityState maximally_mixed(const SpinSpace& space);
  // throws DomainError unless hermitian, unit trace and positive semidefinite
  void validate(double tol = 1e-10) const;
  double purity() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityState> frames;
};

// rho(t) = exp(-iHt) rho0 exp(iHt); the eigendecomposition of H is done once.
class ExactEvolver {
 public:
  ExactEvolver(const Mat& H, const DensityState& rho0);
  DensityState at(double t) const;

 private:
  SpinSpace space_;
  Mat vecs_;
  Eigen::VectorXd energies_;
  Mat rho0_eig_;  // rho0 in the energy basis
};

Trajectory evolve_exact(const Mat& H, const DensityState& rho0, const std::vector<double>& times);

enum class Representation { wigner, weyl };

struct LiouvilleKernel {
  SpinSpace space;
  Representation rep = Representation::wigner;
  Mat matrix;  // N^2 x N^2; i dF/dt = matrix * F
};

// wigner: L(p,q) = (1/N) Tr[G_p [H, G_q]]
// weyl:   L(a,b) = (2i/sqrt N) sin(pi (eta' xi - xi' eta)/N) Tr[S(a-b) H]
LiouvilleKernel build_liouville(const Mat& H, const KernelSet& ks, Representation rep,
                                Exec exec = Exec::parallel);

// Six-index Fourier sum for the Wigner kernel; O(N^8), small-N oracle only.
Mat liouville_six_index(const Mat& H, const KernelSet& ks);
// Tr[S(a) [H, S(b)^dagger]], the operator-space form of the Weyl kernel.
Mat liouville_weyl_operator_form(const Mat& H, const KernelSet& ks);

struct SeriesResult {
  PhaseGrid grid;
  double last_term_norm = 0.0;
  int terms = 0;
  bool converged = false;  // last term below 1e-12 relative to the sum
};

// Truncated sum_k (-i (t - t0))^k L^k / k! applied to grid0. The order of the
// sign is the one that reproduces exact evolution for i dF/dt = L F.
SeriesResult propagate_series(const LiouvilleKernel& kernel, const PhaseGrid& grid0, double t,
                              double t0, int order);

// Eigendecomposition of the (hermitian) kernel, reused across many times.
class Propagator {
 public:
  explicit Propagator(const LiouvilleKernel& kernel);
  PhaseGrid apply(const PhaseGrid& grid0, double t, double t0 = 0.0) const;
  const LiouvilleKernel& kernel() const { return kernel_; }

 private:
  LiouvilleKernel kernel_;
  Mat vecs_;
  Eigen::VectorXd vals_;
};

PhaseGrid propagate_exponential(const LiouvilleKernel& kernel, const PhaseGrid& grid0, double t,
                                double t0);

// Tr[rho0 rho_t], clipped to [0, 1]
double fidelity(const DensityState& rho0, const DensityState& rhot);

}  // namespace phasec
