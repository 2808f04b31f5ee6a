#pragma once

#include <string>

#include "phasec/dynamics.hpp"
#include "phasec/schwinger.hpp"

namespace phasec {

// two_pi: sum_n exp(-pi a n^2) exp(2 pi i n z); alternate: exp(2 i n z)
enum class ThetaConvention { two_pi, alternate };

std::string to_string(ThetaConvention c);

// Lattice sums truncated once the Gaussian weight drops below 1e-16 of the running sum.
// max_terms > 0 forces a fixed window |n| <= max_terms instead.
double theta3(double z, double a, ThetaConvention c = ThetaConvention::two_pi, int max_terms = 0);
double theta4(double z, double a, ThetaConvention c = ThetaConvention::two_pi, int max_terms = 0);

struct SmoothingKernel {
  SpinSpace space;
  ThetaConvention convention = ThetaConvention::two_pi;
  double a = 0.0;  // 1/(4j+2)
  Vec K;           // K(eta, xi) on the flat label grid, K(0,0) = 1
  Eigen::MatrixXd E;  // E(p | p'), real part; Husimi = (1/N) E W
  double E_imag = 0.0;  // largest discarded imaginary part of E
  double validation_min = 0.0, validation_max = 0.0;  // Husimi range over the random test states
  std::string diagnostics;
};

cplx smoothing_weight(const SpinSpace& space, int eta, int xi, ThetaConvention c);

// Build, then check that the Husimi functions of 50 random pure states stay within
// [0,1] and are normalized. Falls back to the other convention if the preferred one
// fails; throws DomainError if both fail.
SmoothingKernel build_smoothing(const KernelSet& ks, ThetaConvention preferred,
                                Exec exec = Exec::parallel);
// preferred convention is two_pi unless built with PHASEC_THETA_ALT
SmoothingKernel build_smoothing(const KernelSet& ks, Exec exec = Exec::parallel);
// no validation, no fallback
SmoothingKernel build_smoothing_unchecked(const SpinSpace& space, ThetaConvention c,
                                          Exec exec = Exec::parallel);

// Throws IntegrityError if values leave [-1e-9, 1+1e-9] or (1/N) sum differs from 1.
PhaseGrid husimi_from_wigner(const PhaseGrid& wigner, const SmoothingKernel& sk,
                             Exec exec = Exec::parallel);
PhaseGrid husimi_unchecked(const PhaseGrid& wigner, const SmoothingKernel& sk,
                           Exec exec = Exec::parallel);

struct Marginals {
  Eigen::VectorXd Q, R;  // Q(mu), R(nu), each with N^{-1/2} prefactor
};

Marginals marginals(const PhaseGrid& husimi);

struct EntropyReport {
  double t = 0.0;
  double E_H = 0.0, E_Q = 0.0, E_R = 0.0, I_H = 0.0, S_vn = 0.0;

  double mutual_defect() const;      // how far I_H is below 0
  double araki_lieb_defect() const;  // violation of |E_Q-E_R| <= E_H <= E_Q+E_R
  double von_neumann_defect() const; // violation of S_vn <= E_H
};

double von_neumann_entropy(const Mat& rho);
EntropyReport entropies_unchecked(const PhaseGrid& husimi, const Mat& rho, double t = 0.0);
// throws IntegrityError if any EntropyReport invariant fails by more than 1e-9
EntropyReport entropies(const PhaseGrid& husimi, const Mat& rho, double t = 0.0);

}  // namespace phasec
