#pragma once

#include <complex>
#include <string>
#include <vector>

namespace isotree {

using cd = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cd& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const cd& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  // Copy without row i and column j.
  ComplexMatrix minor(int i, int j) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cd> data_;
};

inline constexpr double kZeroPivot = 1e-13;

// Gaussian elimination with partial pivoting on entry magnitude. A pivot
// column whose largest entry is below kZeroPivot gives determinant 0.
cd complex_det(const ComplexMatrix& a);

// Relative error with denominator max(|a|, |b|, 1e-300).
double relative_error(cd a, cd b);

}  // namespace isotree
