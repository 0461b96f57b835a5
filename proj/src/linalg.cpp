#include "schubert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "schubert/errors.hpp"

namespace schubert {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("matrix data length does not match its shape");
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::top_rows(std::size_t count) const {
  if (count > rows_) throw ShapeError("top_rows: not enough rows");
  std::vector<Complex> d(data_.begin(), data_.begin() + count * cols_);
  return CMatrix(count, cols_, std::move(d));
}

CMatrix CMatrix::bottom_rows(std::size_t count) const {
  if (count > rows_) throw ShapeError("bottom_rows: not enough rows");
  std::vector<Complex> d(data_.end() - count * cols_, data_.end());
  return CMatrix(count, cols_, std::move(d));
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::frobenius_norm() const { return norm2(data_); }

bool CMatrix::is_real() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return z.imag() == 0.0; });
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product: inner dimensions differ");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ail = a(i, l);
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

CVector operator*(const CMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw ShapeError("matrix-vector product: length mismatch");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("matrix difference: shapes differ");
  std::vector<Complex> d(a.data());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.data()[i];
  return CMatrix(a.rows(), a.cols(), std::move(d));
}

CMatrix stack_rows(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols() && !a.empty() && !b.empty())
    throw ShapeError("stack_rows: column counts differ");
  const std::size_t cols = a.empty() ? b.cols() : a.cols();
  std::vector<Complex> d;
  d.reserve((a.rows() + b.rows()) * cols);
  d.insert(d.end(), a.data().begin(), a.data().end());
  d.insert(d.end(), b.data().begin(), b.data().end());
  return CMatrix(a.rows() + b.rows(), cols, std::move(d));
}

double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix LuFactors::lower() const {
  const std::size_t n = lu.rows();
  CMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) l(i, j) = lu(i, j);
  }
  return l;
}

CMatrix LuFactors::upper() const {
  const std::size_t n = lu.rows();
  CMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = lu(i, j);
  return u;
}

CMatrix LuFactors::permutation() const {
  const std::size_t n = lu.rows();
  CMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
  return p;
}

LuFactors lu_decompose(const CMatrix& a) {
  if (!a.square()) throw ShapeError("lu_decompose: matrix is not square");
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n), 1, false, 0};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  const double threshold = kSingularPivotTolerance * a.max_abs();
  CMatrix& m = f.lu;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(m(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(f.perm[col], f.perm[piv]);
      f.sign = -f.sign;
    }
    if (best <= threshold || best == 0.0) {
      if (!f.singular) {
        f.singular = true;
        f.singular_pivot = col;
      }
      continue;
    }
    const Complex inv = 1.0 / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = m(r, col) * inv;
      m(r, col) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = col + 1; j < n; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return f;
}

Complex det(const CMatrix& a) {
  const LuFactors f = lu_decompose(a);
  Complex d = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

CVector lu_solve(const LuFactors& f, std::span<const Complex> b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw ShapeError("lu_solve: right-hand side length mismatch");
  if (f.singular) {
    std::ostringstream msg;
    msg << "singular matrix (pivot " << f.singular_pivot << ")";
    throw SingularMatrixError(msg.str(), f.singular_pivot);
  }
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

CVector solve_linear(const CMatrix& a, std::span<const Complex> b) {
  return lu_solve(lu_decompose(a), b);
}

CMatrix inverse(const CMatrix& a) {
  const LuFactors f = lu_decompose(a);
  const std::size_t n = a.rows();
  CMatrix inv(n, n);
  CVector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), Complex{});
    e[j] = 1.0;
    const CVector col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

CMatrix inverse_transpose(const CMatrix& a) { return inverse(a).transpose(); }

namespace {

// Gauss-Jordan elimination with complete pivoting. On return the leading
// rank x rank block of `m` (in permuted columns) is the identity.
struct Reduced {
  CMatrix m;
  std::vector<std::size_t> colperm;
  std::size_t rank = 0;
};

Reduced reduce_complete_pivoting(const CMatrix& a, double tol, bool jordan) {
  Reduced red{a, std::vector<std::size_t>(a.cols()), 0};
  std::iota(red.colperm.begin(), red.colperm.end(), std::size_t{0});
  CMatrix& m = red.m;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double scale = a.max_abs();
  if (scale == 0.0) return red;
  const double threshold = tol * scale;

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t pr = s, pc = s;
    double best = -1.0;
    for (std::size_t i = s; i < rows; ++i)
      for (std::size_t j = s; j < cols; ++j) {
        const double v = std::abs(m(i, j));
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best <= threshold) break;
    if (pr != s)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(s, j), m(pr, j));
    if (pc != s) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, s), m(i, pc));
      std::swap(red.colperm[s], red.colperm[pc]);
    }
    const Complex inv = 1.0 / m(s, s);
    if (jordan) {
      for (std::size_t j = s; j < cols; ++j) m(s, j) *= inv;
    }
    const std::size_t first = jordan ? 0 : s + 1;
    for (std::size_t i = first; i < rows; ++i) {
      if (i == s) continue;
      const Complex factor = jordan ? m(i, s) : m(i, s) * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = s; j < cols; ++j) m(i, j) -= factor * m(s, j);
    }
    ++red.rank;
  }
  return red;
}

}  // namespace

std::size_t numeric_rank(const CMatrix& a, double tol) {
  return reduce_complete_pivoting(a, tol, false).rank;
}

CMatrix nullspace(const CMatrix& a, double tol) {
  const Reduced red = reduce_complete_pivoting(a, tol, true);
  const std::size_t n = a.cols();
  const std::size_t r = red.rank;
  CMatrix basis(n, n - r);
  for (std::size_t f = r; f < n; ++f) {
    const std::size_t out = f - r;
    basis(red.colperm[f], out) = 1.0;
    for (std::size_t p = 0; p < r; ++p) basis(red.colperm[p], out) = -red.m(p, f);
  }
  return basis;
}

CMatrix orthonormal_rows(const CMatrix& a, double tol) {
  std::vector<CVector> kept;
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    CVector v(a.row(i).begin(), a.row(i).end());
    const double original = norm2(v);
    if (original == 0.0) continue;
    // Two passes of modified Gram-Schmidt for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) {
        Complex proj = 0.0;
        for (std::size_t j = 0; j < n; ++j) proj += v[j] * std::conj(q[j]);
        for (std::size_t j = 0; j < n; ++j) v[j] -= proj * q[j];
      }
    }
    const double residual = norm2(v);
    if (residual <= tol * original) continue;
    for (auto& z : v) z /= residual;
    kept.push_back(std::move(v));
  }
  CMatrix q(kept.size(), n);
  for (std::size_t i = 0; i < kept.size(); ++i)
    std::copy(kept[i].begin(), kept[i].end(), q.row(i).begin());
  return q;
}

CMatrix intersect_rowspaces(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.cols() != b.cols()) throw ShapeError("intersect_rowspaces: column counts differ");
  const std::size_t n = a.cols();
  if (a.rows() == 0 || b.rows() == 0) return CMatrix(0, n);
  // w^T [a; b] = 0 splits as u a = -v b.
  const CMatrix stacked = stack_rows(a, b);
  const CMatrix w = nullspace(stacked.transpose(), tol);
  CMatrix candidates(w.cols(), n);
  for (std::size_t c = 0; c < w.cols(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const Complex u = w(i, c);
      if (u == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) candidates(c, j) += u * a(i, j);
    }
  return orthonormal_rows(candidates, tol);
}

double principal_angle_bound(const CMatrix& a, const CMatrix& b) {
  const CMatrix u = orthonormal_rows(a);
  const CMatrix w = orthonormal_rows(b);
  if (u.rows() != w.rows() || u.cols() != w.cols()) return std::numbers::pi / 2;
  const std::size_t n = u.cols();
  double residual_sq = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    CVector r(u.row(i).begin(), u.row(i).end());
    for (std::size_t l = 0; l < w.rows(); ++l) {
      Complex proj = 0.0;
      for (std::size_t j = 0; j < n; ++j) proj += u(i, j) * std::conj(w(l, j));
      for (std::size_t j = 0; j < n; ++j) r[j] -= proj * w(l, j);
    }
    for (const auto& z : r) residual_sq += std::norm(z);
  }
  return std::asin(std::min(1.0, std::sqrt(residual_sq)));
}

}  // namespace schubert
