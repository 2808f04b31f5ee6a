#include "phasec/spin_space.hpp"

namespace phasec {

SpinSpace SpinSpace::from_two_j(int two_j) {
  if (two_j < 0) throw DomainError("spin must be non-negative");
  SpinSpace s;
  s.two_j = two_j;
  s.dim = two_j + 1;
  s.ell = s.odd() ? two_j / 2 : 0;
  return s;
}

SpinSpace SpinSpace::from_dim(int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  return from_two_j(dim - 1);
}

void SpinSpace::require_odd() const {
  if (!odd())
    throw DomainError("phase-space operations need odd dimension, got N=" + std::to_string(dim));
}

int SpinSpace::reduce(long long x) const {
  long long n = dim;
  long long r = ((x + ell) % n + n) % n;
  return static_cast<int>(r - ell);
}

std::string describe(const SpinSpace& s) {
  if (s.two_j % 2 == 0) return "j=" + std::to_string(s.two_j / 2) + " N=" + std::to_string(s.dim);
  return "j=" + std::to_string(s.two_j) + "/2 N=" + std::to_string(s.dim);
}

}  // namespace phasec
