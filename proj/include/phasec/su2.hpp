#pragma once

#include "phasec/spin_space.hpp"

namespace phasec {

struct Generators {
  Mat Jx, Jy, Jz, Jplus, Jminus, Jsquared;
  const Mat& axis(int a) const { return a == 0 ? Jx : (a == 1 ? Jy : Jz); }
};

Generators build_generators(const SpinSpace& space);

struct CoherentParams {
  double theta = 0.0;
  double phi = 0.0;
};

void validate(const CoherentParams& p);

// Amplitudes on |j, k-j>, k = 0..2j; the k = 0 amplitude is real and non-negative.
Vec coherent_state(const SpinSpace& space, const CoherentParams& p);

// <bra|ket> in closed form, half-angle version (agrees with the vector inner product).
cplx overlap(const CoherentParams& bra, const CoherentParams& ket, const SpinSpace& space);
// The full-angle expression as it is usually quoted; kept for comparison only.
cplx overlap_printed(const CoherentParams& bra, const CoherentParams& ket, const SpinSpace& space);
// cos^{4j}(Theta/2) with cos Theta the spherical angle between the two directions.
double overlap_probability(const CoherentParams& bra, const CoherentParams& ket, const SpinSpace& space);

// exp(-i H t) for hermitian H, by eigendecomposition.
Mat expm_hermitian(const Mat& H, double t = 1.0);
// exp(X) for a general matrix (scaling and squaring).
Mat expm_general(const Mat& X);

double hermiticity_defect(const Mat& A);

struct RotationCoefficients {
  Eigen::Matrix3d A = Eigen::Matrix3d::Identity();

  double orthonormality_defect() const;
  double cofactor_defect() const;
  bool valid(double tol = 1e-10) const {
    return orthonormality_defect() < tol && cofactor_defect() < tol;
  }
};

// T(xi, omega) = exp(xi J+ + i omega Jz - conj(xi) J-)
Mat transform_operator(cplx xi, double omega, const Generators& g);

RotationCoefficients rotation_coefficients(cplx xi, double omega);

struct TransformedGenerators {
  Mat Jx, Jy, Jz;  // T^dagger J_a T by conjugation
  RotationCoefficients coeffs;
  double max_deviation = 0.0;  // conjugation vs linear combination
};

// Throws IntegrityError if the two computations differ by more than tol.
TransformedGenerators transform_generator(cplx xi, double omega, const SpinSpace& space,
                                          double tol = 1e-10);

struct Decomposition {
  cplx lambda_plus, lambda_minus, lambda_z;
};

Decomposition decomposition_params(cplx xi, double omega);
// exp(L+ J+) exp(ln(Lz) Jz) exp(L- J-)
Mat normal_ordered_product(const Decomposition& d, const Generators& g);

}  // namespace phasec
