#pragma once

#include "phasec/spin_space.hpp"

namespace phasec {

// y = M x with a fixed left-to-right inner summation per row, so the serial and
// OpenMP variants produce bitwise-identical results.
Vec dense_matvec(const Mat& M, const Vec& x, Exec exec);

// C = A B, same determinism guarantee (rows of C are independent tasks).
Mat dense_matmul(const Mat& A, const Mat& B, Exec exec);

inline Vec vectorize(const Mat& O) { return Eigen::Map<const Vec>(O.data(), O.size()); }

}  // namespace phasec
