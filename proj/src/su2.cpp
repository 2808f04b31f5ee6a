#include "phasec/su2.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace phasec {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(x)/x with the removable singularity filled in
double sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

Generators build_generators(const SpinSpace& space) {
  const int n = space.dim;
  const double j = space.j();
  Generators g;
  g.Jplus = Mat::Zero(n, n);
  g.Jz = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double m = space.m(k);
    g.Jz(k, k) = m;
    if (k + 1 < n) g.Jplus(k + 1, k) = std::sqrt((j - m) * (j + m + 1.0));
  }
  g.Jminus = g.Jplus.adjoint();
  g.Jx = (g.Jplus + g.Jminus) * 0.5;
  g.Jy = (g.Jplus - g.Jminus) * cplx(0.0, -0.5);
  g.Jsquared = g.Jx * g.Jx + g.Jy * g.Jy + g.Jz * g.Jz;
  return g;
}

void validate(const CoherentParams& p) {
  if (!(p.theta >= 0.0 && p.theta <= kPi))
    throw DomainError("theta must lie in [0, pi]");
  if (!std::isfinite(p.phi)) throw DomainError("phi must be finite");
}

Vec coherent_state(const SpinSpace& space, const CoherentParams& p) {
  validate(p);
  const int tj = space.two_j;
  const double s = std::sin(p.theta / 2), c = std::cos(p.theta / 2);
  Vec v(space.dim);
  for (int k = 0; k <= tj; ++k) {
    double amp = std::sqrt(binomial(tj, k)) * std::pow(s, k) * std::pow(c, tj - k);
    v(k) = std::polar(amp, -k * p.phi);
  }
  return v;
}

cplx overlap(const CoherentParams& bra, const CoherentParams& ket, const SpinSpace& space) {
  cplx base = std::cos(bra.theta / 2) * std::cos(ket.theta / 2) +
              std::sin(bra.theta / 2) * std::sin(ket.theta / 2) *
                  std::polar(1.0, bra.phi - ket.phi);
  return std::pow(base, space.two_j);
}

cplx overlap_printed(const CoherentParams& bra, const CoherentParams& ket, const SpinSpace& space) {
  cplx base = std::cos(bra.theta) * std::cos(ket.theta) +
              std::sin(bra.theta) * std::sin(ket.theta) * std::polar(1.0, bra.phi - ket.phi);
  return std::pow(base, space.two_j);
}

double overlap_probability(const CoherentParams& bra, const CoherentParams& ket,
                           const SpinSpace& space) {
  double cos_big = std::cos(bra.theta) * std::cos(ket.theta) +
                   std::sin(bra.theta) * std::sin(ket.theta) * std::cos(bra.phi - ket.phi);
  return std::pow((1.0 + cos_big) / 2.0, space.two_j);
}

Mat expm_hermitian(const Mat& H, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const Vec phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat expm_general(const Mat& X) { return X.exp(); }

double hermiticity_defect(const Mat& A) { return (A - A.adjoint()).cwiseAbs().maxCoeff(); }

double RotationCoefficients::orthonormality_defect() const {
  return (A.transpose() * A - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

double RotationCoefficients::cofactor_defect() const {
  // each entry equals its cofactor for a proper rotation
  double worst = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
      double cof = A(r1, c1) * A(r2, c2) - A(r1, c2) * A(r2, c1);
      worst = std::max(worst, std::abs(cof - A(r, c)));
    }
  return worst;
}

Mat transform_operator(cplx xi, double omega, const Generators& g) {
  // X = xi J+ + i omega Jz - conj(xi) J- is anti-hermitian, so X = -i K with K hermitian.
  Mat X = xi * g.Jplus + cplx(0.0, omega) * g.Jz - std::conj(xi) * g.Jminus;
  Mat K = cplx(0.0, 1.0) * X;
  K = (K + K.adjoint()) * 0.5;
  return expm_hermitian(K, 1.0);
}

RotationCoefficients rotation_coefficients(cplx xi, double omega) {
  const double re = xi.real(), im = xi.imag();
  const double ph = std::sqrt(std::norm(xi) + 0.25 * omega * omega);
  const double s2 = sinc(ph) * sinc(ph);  // sin^2(phi)/phi^2
  const double h = sinc(2 * ph);          // sin(2 phi)/(2 phi)
  const double c2 = std::cos(2 * ph);
  RotationCoefficients rc;
  auto& A = rc.A;
  A(0, 0) = c2 + 2 * im * im * s2;
  A(0, 1) = omega * h + 2 * re * im * s2;
  A(0, 2) = omega * im * s2 - re * 2 * h;
  A(1, 0) = -omega * h + 2 * re * im * s2;
  A(1, 1) = c2 + 2 * re * re * s2;
  A(1, 2) = omega * re * s2 + im * 2 * h;
  A(2, 0) = omega * im * s2 + re * 2 * h;
  A(2, 1) = omega * re * s2 - im * 2 * h;
  A(2, 2) = c2 + 0.5 * omega * omega * s2;
  return rc;
}

TransformedGenerators transform_generator(cplx xi, double omega, const SpinSpace& space,
                                          double tol) {
  const Generators g = build_generators(space);
  const Mat T = transform_operator(xi, omega, g);
  TransformedGenerators out;
  out.Jx = T.adjoint() * g.Jx * T;
  out.Jy = T.adjoint() * g.Jy * T;
  out.Jz = T.adjoint() * g.Jz * T;
  out.coeffs = rotation_coefficients(xi, omega);
  const auto& A = out.coeffs.A;
  const Mat* conj[3] = {&out.Jx, &out.Jy, &out.Jz};
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    Mat lin = A(a, 0) * g.Jx + A(a, 1) * g.Jy + A(a, 2) * g.Jz;
    worst = std::max(worst, (lin - *conj[a]).cwiseAbs().maxCoeff());
  }
  out.max_deviation = worst;
  if (worst > tol)
    throw IntegrityError("transformed generators: closed form deviates from conjugation by " +
                         std::to_string(worst));
  return out;
}

Decomposition decomposition_params(cplx xi, double omega) {
  const double ph = std::sqrt(std::norm(xi) + 0.25 * omega * omega);
  if (ph == 0.0) return {0.0, 0.0, 1.0};
  const cplx denom = std::cos(ph) - cplx(0.0, omega / (2 * ph)) * std::sin(ph);
  if (std::abs(denom) < 1e-14)
    throw DomainError("decomposition undefined: cos(phi) - i(omega/2phi) sin(phi) vanishes");
  Decomposition d;
  d.lambda_plus = (xi / ph) * std::sin(ph) / denom;
  d.lambda_minus = -(std::conj(xi) / ph) * std::sin(ph) / denom;
  d.lambda_z = 1.0 / (denom * denom);
  return d;
}

Mat normal_ordered_product(const Decomposition& d, const Generators& g) {
  const int n = static_cast<int>(g.Jz.rows());
  Mat mid = Mat::Zero(n, n);
  const cplx log_z = std::log(d.lambda_z);
  for (int k = 0; k < n; ++k) mid(k, k) = std::exp(log_z * g.Jz(k, k).real());
  return expm_general(d.lambda_plus * g.Jplus) * mid * expm_general(d.lambda_minus * g.Jminus);
}

}  // namespace phasec
