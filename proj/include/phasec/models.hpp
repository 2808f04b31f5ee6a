#pragma once

#include <string>
#include <vector>

#include "phasec/measures.hpp"
#include "phasec/su2.hpp"

namespace phasec {

struct LmgParams {
  int n_spins = 20;
  double h = 0.0;
  double gamma = 0.0;
  double lambda = 1.0;
  // Field term is -field_scale*h*Jz. 1 gives the simplified form -h Jz - (1/n)(Jx^2 + g Jy^2);
  // 2 matches the Pauli-matrix field normalization of the spin-half model.
  double field_scale = 1.0;
  // Use -2hJz - 2p+ [J^2 - Jz^2 - n/2] - p- (J+^2 + J-^2) with p+- = lambda (1 +- gamma)/(2n).
  bool full_form = false;

  void validate() const;
};

Mat lmg_hamiltonian(const LmgParams& p, const SpinSpace& space);

struct KuParams {
  double chi = 1.0;
  int two_j = 4;
};

Mat ku_hamiltonian(const KuParams& p, const SpinSpace& space);

// Closed-form one-axis-twisting moments of a coherent state at tau = chi t.
// Covariances involving z are not part of the closed set and are left as NaN
// except where they follow from [H, Jz] = 0.
MomentReport ku_analytic_moments(const KuParams& p, const CoherentParams& cp, double tau);

struct KuComparison {
  double max_deviation = 0.0;
  double worst_tau = 0.0;
  std::string worst_field;
};

KuComparison ku_numeric_vs_analytic(const KuParams& p, const CoherentParams& cp,
                                    const std::vector<double>& taus);

}  // namespace phasec
