#pragma once

#include <cstdint>
#include <vector>

#include "schubert/linalg.hpp"
#include "schubert/random.hpp"

namespace schubert {

// A complete flag given by an ordered basis: row l of `matrix` is f_l and
// F_l is the span of rows 1..l.
class Flag {
 public:
  // Throws InvalidInput if the matrix is not square or is singular.
  explicit Flag(CMatrix matrix);

  std::size_t n() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  // True when every entry has zero imaginary part.
  bool real() const { return real_; }
  // Basis of F_l (the first l rows).
  CMatrix subspace(std::size_t l) const { return matrix_.top_rows(l); }

 private:
  CMatrix matrix_;
  bool real_;
};

Flag coordinate_flag(std::size_t n);
// Rows e_n, e_{n-1}, ..., e_1, so E'_l = <e_n, ..., e_{n+1-l}>.
Flag opposite_flag(std::size_t n);

// Entries i.i.d. uniform on [-1,1] (real) or with real and imaginary parts
// i.i.d. uniform on [-1,1] (complex). A singular draw is redrawn, at most 8
// attempts in total.
Flag random_flag(std::size_t n, Rng& rng, bool real);
Flag random_flag(std::size_t n, std::uint64_t seed, bool real);
// `count` flags drawn in sequence from one generator.
std::vector<Flag> random_flags(std::size_t count, std::size_t n, std::uint64_t seed, bool real);

// Flag on the dual space with l-th subspace (F_{n-l})^perp: the rows of
// inverse_transpose(F) in reverse order.
Flag dual_flag(const Flag& f);

// g with row i spanning F_i ∩ F'_{n+1-i}, each row of unit norm, so that the
// first l rows of g span F_l and the last l rows span F'_l. Throws
// GeneralPositionError naming the first index whose intersection is not a
// line.
CMatrix general_position_transform(const Flag& f, const Flag& fp);

}  // namespace schubert
