#include "schubert/flags.hpp"

#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

Flag::Flag(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.square() || matrix_.rows() < 2)
    throw InvalidInput("flag matrix must be square of size at least 2");
  if (lu_decompose(matrix_).singular) throw InvalidInput("flag matrix is singular");
  real_ = matrix_.is_real();
}

Flag coordinate_flag(std::size_t n) { return Flag(CMatrix::identity(n)); }

Flag opposite_flag(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1.0;
  return Flag(std::move(m));
}

Flag random_flag(std::size_t n, Rng& rng, bool real) {
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = real ? Complex(rng.uniform_symmetric(), 0.0) : rng.complex_square();
    if (!lu_decompose(m).singular) return Flag(std::move(m));
  }
  throw NumericalFailure("random_flag: no nonsingular draw in 8 attempts");
}

Flag random_flag(std::size_t n, std::uint64_t seed, bool real) {
  Rng rng(seed);
  return random_flag(n, rng, real);
}

std::vector<Flag> random_flags(std::size_t count, std::size_t n, std::uint64_t seed,
                               bool real) {
  Rng rng(seed);
  std::vector<Flag> flags;
  flags.reserve(count);
  for (std::size_t i = 0; i < count; ++i) flags.push_back(random_flag(n, rng, real));
  return flags;
}

Flag dual_flag(const Flag& f) {
  const CMatrix it = inverse_transpose(f.matrix());
  const std::size_t n = f.n();
  CMatrix reversed(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) reversed(l, j) = it(n - 1 - l, j);
  return Flag(std::move(reversed));
}

CMatrix general_position_transform(const Flag& f, const Flag& fp) {
  if (f.n() != fp.n()) throw ShapeError("general_position_transform: flag sizes differ");
  const std::size_t n = f.n();
  CMatrix g(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    const CMatrix line = intersect_rowspaces(f.subspace(i), fp.subspace(n + 1 - i));
    if (line.rows() != 1) {
      std::ostringstream msg;
      msg << "flags are not in general position: F_" << i << " ∩ F'_" << n + 1 - i
          << " has dimension " << line.rows();
      throw GeneralPositionError(msg.str(), i);
    }
    // Fix the phase so the largest entry is positive real; keeps real
    // flags real.
    std::size_t big = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(line(0, j)) > std::abs(line(0, big))) big = j;
    const Complex phase = std::abs(line(0, big)) / line(0, big);
    for (std::size_t j = 0; j < n; ++j) g(i - 1, j) = line(0, j) * phase;
  }
  return g;
}

}  // namespace schubert
