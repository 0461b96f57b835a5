#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schubert {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Complex> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const Complex> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<Complex>& data() const { return data_; }

  CMatrix transpose() const;
  // First `count` rows.
  CMatrix top_rows(std::size_t count) const;
  CMatrix bottom_rows(std::size_t count) const;

  double max_abs() const;
  double frobenius_norm() const;
  bool is_real() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, std::span<const Complex> x);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

// [a; b]: rows of a followed by rows of b.
CMatrix stack_rows(const CMatrix& a, const CMatrix& b);

double norm2(std::span<const Complex> x);

// Relative pivot threshold below which a matrix is treated as singular.
inline constexpr double kSingularPivotTolerance = 1e-13;

// PA = LU with partial pivoting. L is unit lower triangular and shares
// storage with U in `lu`. perm[i] is the original row placed at row i.
struct LuFactors {
  CMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
  std::size_t singular_pivot = 0;  // first offending column when singular

  CMatrix lower() const;
  CMatrix upper() const;
  CMatrix permutation() const;
};

LuFactors lu_decompose(const CMatrix& a);
Complex det(const CMatrix& a);
// Solves a x = b. Throws SingularMatrixError naming the pivot when singular.
CVector solve_linear(const CMatrix& a, std::span<const Complex> b);
CVector lu_solve(const LuFactors& f, std::span<const Complex> b);
CMatrix inverse(const CMatrix& a);
CMatrix inverse_transpose(const CMatrix& a);

// Count of pivots exceeding tol * max|a_ij| under complete pivoting.
std::size_t numeric_rank(const CMatrix& a, double tol);

// Columns form a basis of {v : a v = 0}. Rank is decided by complete
// pivoting at relative tolerance `tol`.
CMatrix nullspace(const CMatrix& a, double tol = 1e-10);

// Rows orthonormal under the Hermitian product, spanning rowspace(a).
// Rows whose residual falls below tol * (their norm) are dropped.
CMatrix orthonormal_rows(const CMatrix& a, double tol = 1e-10);

// Rows form a basis of rowspace(a) ∩ rowspace(b); 0 x n when trivial.
CMatrix intersect_rowspaces(const CMatrix& a, const CMatrix& b, double tol = 1e-10);

// Upper bound on the largest principal angle between rowspace(a) and
// rowspace(b). Returns pi/2 when the dimensions differ.
double principal_angle_bound(const CMatrix& a, const CMatrix& b);

}  // namespace schubert
