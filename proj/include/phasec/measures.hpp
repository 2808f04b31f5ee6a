#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "phasec/schwinger.hpp"
#include "phasec/su2.hpp"

namespace phasec {

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
inline bool defined(double v) { return !std::isnan(v); }
// strict violation flag used for every "< 1" criterion
inline bool below_one(double v, double tol = 1e-9) { return defined(v) && v < 1.0 - tol; }

// axis 0,1,2 = x,y,z; pair 0,1,2 = xy,xz,yz
inline int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  return a == 0 ? (b == 1 ? 0 : 1) : 2;
}

struct MomentReport {
  double t = 0.0;
  std::array<double, 3> mean{}, second{}, var{}, cov{}, anticomm{};

  double covariance(int a, int b) const { return a == b ? var[a] : cov[pair_index(a, b)]; }
  double balance_defect() const;  // statistical balance of Jx, Jy, Jz
};

MomentReport moments_from_state(const Mat& rho, const Generators& g, double t = 0.0);

// Mapped forms of every operator needed for a MomentReport.
struct MappedMoments {
  std::array<PhaseGrid, 3> linear, square, anticomm;
};

MappedMoments map_moment_operators(const Generators& g, const KernelSet& ks);

// Throws IntegrityError if any imaginary residue exceeds 1e-9.
MomentReport moments_from_wigner(const PhaseGrid& wigner, const MappedMoments& ops, double t = 0.0);

struct CriteriaReport {
  double t = 0.0;
  // R[c] is the RS denominator of the pair {a,b} complementary to c
  std::array<double, 3> R{kUndefined, kUndefined, kUndefined};
  // S[a][c] = var[a] / R[c], undefined for a == c
  std::array<std::array<double, 3>, 3> S{};
  std::array<double, 3> sorensen{kUndefined, kUndefined, kUndefined};
  std::array<double, 3> toth_param{kUndefined, kUndefined, kUndefined};
  double toth_sum_second = 0.0;     // <Jx^2>+<Jy^2>+<Jz^2>, <= bound always
  double toth_sum_var = 0.0;        // (N+2)/2 sum var, >= bound for separable
  std::array<double, 3> toth_pair_second{};  // indexed by c, <= bound for separable
  std::array<double, 3> toth_pair_var{};     // indexed by c, >= bound for separable
  double toth_bound = 0.0;                   // N(N+2)/4
  std::array<double, 3> snr{kUndefined, kUndefined, kUndefined};

  bool squeezed(int a, int c) const { return below_one(S[a][c]); }
  bool sorensen_violated(int a) const { return below_one(sorensen[a]); }
  bool toth_violated(int a) const { return below_one(toth_param[a]); }
  bool toth_inequality_violated() const;  // any of the three separability tests
};

void squeezing_params(const MomentReport& m, CriteriaReport& out);
std::array<double, 3> entanglement_sorensen(const MomentReport& m, int n_spins);
void entanglement_toth(const MomentReport& m, int n_spins, CriteriaReport& out);
std::array<double, 3> snr(const MomentReport& m);
CriteriaReport evaluate_criteria(const MomentReport& m, int n_spins);

// Moments of the rotated generators sum_b A_ab J_b.
MomentReport transform_moments(const MomentReport& m, const RotationCoefficients& A);

// Closed-form variances of Jx, Jy, Jz and their sums on a coherent state.
struct CoherentVariances {
  double x, y, z, xy, xz, yz, x_plus_y, x_plus_z, y_plus_z, x_plus_y_plus_z;
};
CoherentVariances coherent_variances(double j, const CoherentParams& p);

}  // namespace phasec
