#include "isotree/complex_matrix.h"

#include <algorithm>
#include <cmath>

#include "isotree/error.h"

namespace isotree {

ComplexMatrix ComplexMatrix::minor(int i, int j) const {
  ComplexMatrix out(rows_ - 1, cols_ - 1);
  for (int r = 0, rr = 0; r < rows_; ++r) {
    if (r == i) continue;
    for (int c = 0, cc = 0; c < cols_; ++c) {
      if (c == j) continue;
      out(rr, cc++) = (*this)(r, c);
    }
    ++rr;
  }
  for (int r = 0; r < static_cast<int>(row_labels.size()); ++r)
    if (r != i) out.row_labels.push_back(row_labels[r]);
  for (int c = 0; c < static_cast<int>(col_labels.size()); ++c)
    if (c != j) out.col_labels.push_back(col_labels[c]);
  return out;
}

cd complex_det(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::BadInput, "determinant of a non-square matrix");
  const int n = a.rows();
  ComplexMatrix m = a;
  cd det = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (std::abs(m(p, k)) < kZeroPivot) return 0.0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cd f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

double relative_error(cd a, cd b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace isotree
