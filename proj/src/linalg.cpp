#include "phasec/linalg.hpp"

namespace phasec {

Vec dense_matvec(const Mat& M, const Vec& x, Exec exec) {
  const Eigen::Index rows = M.rows(), cols = M.cols();
  // row-major copy keeps each row contiguous
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> R = M;
  Vec y(rows);
  auto row = [&](Eigen::Index r) {
    const cplx* p = R.data() + r * cols;
    cplx s = 0.0;
    for (Eigen::Index c = 0; c < cols; ++c) s += p[c] * x(c);
    y(r) = s;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index r = 0; r < rows; ++r) row(r);
  } else {
    for (Eigen::Index r = 0; r < rows; ++r) row(r);
  }
  return y;
}

Mat dense_matmul(const Mat& A, const Mat& B, Exec exec) {
  const Eigen::Index rows = A.rows(), inner = A.cols(), cols = B.cols();
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> R = A;
  Mat C(rows, cols);
  auto row = [&](Eigen::Index r) {
    const cplx* a = R.data() + r * inner;
    for (Eigen::Index c = 0; c < cols; ++c) {
      const cplx* b = B.data() + c * inner;
      cplx s = 0.0;
      for (Eigen::Index k = 0; k < inner; ++k) s += a[k] * b[k];
      C(r, c) = s;
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index r = 0; r < rows; ++r) row(r);
  } else {
    for (Eigen::Index r = 0; r < rows; ++r) row(r);
  }
  return C;
}

}  // namespace phasec
