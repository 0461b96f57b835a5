#include "schubert/cells.hpp"

#include "schubert/errors.hpp"

namespace schubert {

CMatrix PatternMatrix::fill(std::span<const Complex> values) const {
  if (values.size() != static_cast<std::size_t>(var_count_))
    throw ShapeError("pattern fill: wrong number of values");
  CMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Cell& c = at(i, j);
      if (c.kind == CellKind::One) m(i, j) = 1.0;
      if (c.kind == CellKind::Var) m(i, j) = values[static_cast<std::size_t>(c.var)];
    }
  return m;
}

PatternMatrix pattern_single(const SchubertCondition& c) {
  const auto k = static_cast<std::size_t>(c.k());
  const auto n = static_cast<std::size_t>(c.n());
  PatternMatrix p(k, n);
  std::vector<bool> pivot_col(n, false);
  for (int b : c.beta()) pivot_col[static_cast<std::size_t>(b - 1)] = true;
  for (std::size_t i = 0; i < k; ++i) {
    const auto bi = static_cast<std::size_t>(c.beta()[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 == bi) {
        p.set_one(i, j);
      } else if (j + 1 > bi || pivot_col[j]) {
        p.set_zero(i, j);
      } else {
        p.set_var(i, j);
      }
    }
  }
  return p;
}

PatternMatrix pattern_pair(const SchubertCondition& b, const SchubertCondition& g) {
  if (!feasible_pair(b, g)) {
    throw InvalidInput("infeasible pair " + b.to_string() + ", " + g.to_string() +
                       ": X_b E ∩ X_g E' is empty");
  }
  const int k = b.k();
  const int n = b.n();
  PatternMatrix p(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
  for (int i = 1; i <= k; ++i) {
    const int lo = n + 1 - g.at(k + 1 - i);
    const int hi = b.at(i);
    for (int j = 1; j <= n; ++j) {
      const auto r = static_cast<std::size_t>(i - 1);
      const auto col = static_cast<std::size_t>(j - 1);
      if (j == hi) {
        p.set_one(r, col);
      } else if (j < lo || j > hi) {
        p.set_zero(r, col);
      } else {
        p.set_var(r, col);
      }
    }
  }
  return p;
}

Complex AffineExpr::evaluate(std::span<const Complex> x) const {
  Complex s = constant;
  for (const auto& [v, c] : terms) s += c * x[static_cast<std::size_t>(v)];
  return s;
}

CMatrix AffineMatrix::evaluate(std::span<const Complex> x) const {
  CMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(x);
  return m;
}

AffineMatrix AffineMatrix::transpose() const {
  AffineMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  t.set_var_range(var_begin_, var_end_);
  return t;
}

AffineMatrix instantiate_primal(const PatternMatrix& p, const CMatrix& basis, int var_offset) {
  if (p.cols() != basis.rows() || !basis.square())
    throw ShapeError("instantiate_primal: pattern columns do not match the flag size");
  const std::size_t n = basis.cols();
  AffineMatrix out(p.rows(), n);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      AffineExpr e;
      // Pattern cells in a row have increasing variable ids, so terms come
      // out sorted.
      for (std::size_t l = 0; l < p.cols(); ++l) {
        const Cell& c = p.at(i, l);
        const Complex coeff = basis(l, j);
        if (coeff == 0.0) continue;
        if (c.kind == CellKind::One) e.constant += coeff;
        if (c.kind == CellKind::Var) e.terms.emplace_back(c.var + var_offset, coeff);
      }
      out(i, j) = std::move(e);
    }
  }
  out.set_var_range(var_offset, var_offset + p.var_count());
  return out;
}

AffineMatrix instantiate_primal(const PatternMatrix& p, const Flag& f, int var_offset) {
  return instantiate_primal(p, f.matrix(), var_offset);
}

AffineMatrix instantiate_dual(const SchubertCondition& c, const Flag& f, int var_offset) {
  if (static_cast<std::size_t>(c.n()) != f.n())
    throw ShapeError("instantiate_dual: condition and flag dimensions differ");
  const PatternMatrix dual = pattern_single(dual_condition(c));
  return instantiate_primal(dual, dual_flag(f), var_offset).transpose();
}

CMatrix sample_cell_point(const PatternMatrix& p, Rng& rng) {
  std::vector<Complex> values(static_cast<std::size_t>(p.var_count()));
  for (auto& v : values) v = rng.complex_square();
  return p.fill(values);
}

}  // namespace schubert
