#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "schubert/combinat.hpp"
#include "schubert/flags.hpp"
#include "schubert/linalg.hpp"
#include "schubert/random.hpp"

namespace schubert {

enum class CellKind { Zero, One, Var };

struct Cell {
  CellKind kind = CellKind::Zero;
  int var = -1;  // local variable id when kind == Var
};

// k x n grid describing a Schubert cell chart. Variable ids are dense,
// assigned row by row, left to right. Row and column indices are 0-based.
class PatternMatrix {
 public:
  PatternMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int var_count() const { return var_count_; }
  const Cell& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  void set_one(std::size_t i, std::size_t j) { cells_[i * cols_ + j] = {CellKind::One, -1}; }
  void set_zero(std::size_t i, std::size_t j) { cells_[i * cols_ + j] = {CellKind::Zero, -1}; }
  // Marks the cell free, taking the next variable id.
  void set_var(std::size_t i, std::size_t j) { cells_[i * cols_ + j] = {CellKind::Var, var_count_++}; }

  // Substitute values[v] for variable v.
  CMatrix fill(std::span<const Complex> values) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Cell> cells_;
  int var_count_ = 0;
};

// M_beta: m_{i,beta_j} = delta_ij, m_{ij} = 0 for j > beta_i, free otherwise.
PatternMatrix pattern_single(const SchubertCondition& c);
// M_beta^gamma: row i is supported on [n+1-gamma_{k+1-i}, beta_i] with a 1
// at beta_i and free entries elsewhere in that range. Throws InvalidInput
// when the pair is infeasible.
PatternMatrix pattern_pair(const SchubertCondition& b, const SchubertCondition& g);

// c0 + sum_v c_v x_v, terms sorted by global variable id.
struct AffineExpr {
  Complex constant = 0.0;
  std::vector<std::pair<int, Complex>> terms;

  Complex evaluate(std::span<const Complex> x) const;
  bool is_constant() const { return terms.empty(); }
};

class AffineMatrix {
 public:
  AffineMatrix() = default;
  AffineMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  AffineExpr& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const AffineExpr& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  // Global variable ids referenced here lie in [var_begin, var_end).
  int var_begin() const { return var_begin_; }
  int var_end() const { return var_end_; }
  void set_var_range(int begin, int end) {
    var_begin_ = begin;
    var_end_ = end;
  }

  CMatrix evaluate(std::span<const Complex> x) const;
  AffineMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<AffineExpr> entries_;
  int var_begin_ = 0;
  int var_end_ = 0;
};

// (symbolic pattern) * basis, with pattern variable v renamed v + var_offset.
AffineMatrix instantiate_primal(const PatternMatrix& p, const CMatrix& basis, int var_offset);
AffineMatrix instantiate_primal(const PatternMatrix& p, const Flag& f, int var_offset);

// n x (n-k) matrix whose column space runs over an open subset of
// perp(X_c F): the chart of the dual condition against the dual flag,
// transposed.
AffineMatrix instantiate_dual(const SchubertCondition& c, const Flag& f, int var_offset);

// Pattern with each free cell replaced by a draw from rng.complex_square().
CMatrix sample_cell_point(const PatternMatrix& p, Rng& rng);

}  // namespace schubert
