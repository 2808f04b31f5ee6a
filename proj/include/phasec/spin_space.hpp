#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phasec {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Bad input that the caller could have avoided (wrong dimension, singular parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical self-check failed (cross-route mismatch, invariant broken).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Exec { serial, parallel };

// Spin-j multiplet, N = 2j+1 basis states ordered m = -j, ..., j.
// Phase-space labels live in [-ell, ell] and only exist for odd N.
struct SpinSpace {
  int two_j = 0;
  int dim = 1;
  int ell = 0;

  static SpinSpace from_two_j(int two_j);
  static SpinSpace from_dim(int dim);

  double j() const { return 0.5 * two_j; }
  bool odd() const { return dim % 2 == 1; }
  void require_odd() const;

  double m(int k) const { return k - 0.5 * two_j; }

  int reduce(long long x) const;
  int index(long long label) const { return reduce(label) + ell; }
  int label(int index) const { return index - ell; }
  // flat position of the phase-space point (a, b) in an N*N vector
  int flat(long long a, long long b) const { return index(a) * dim + index(b); }
  int points() const { return dim * dim; }

  bool operator==(const SpinSpace&) const = default;
};

std::string describe(const SpinSpace& s);

}  // namespace phasec
