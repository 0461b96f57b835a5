#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schubert/cells.hpp"
#include "schubert/combinat.hpp"
#include "schubert/errors.hpp"
#include "schubert/flags.hpp"
#include "schubert/polysys.hpp"

namespace schubert {

enum class FormulationMode {
  Primal,  // rank conditions as minors in a pair chart; overdetermined
  Full,    // M_{b1} against dual charts for every other condition
  Paired,  // pair charts on both sides
  Hybrid,  // paired, with box conditions as determinants
};

std::string to_string(FormulationMode mode);
// Throws InvalidInput for an unknown name.
FormulationMode parse_mode(const std::string& name);

enum class BlockRole { Primal, Dual };

struct ChartBlock {
  BlockRole role = BlockRole::Primal;
  std::vector<std::size_t> conditions;  // 0-based indices into the problem
  int var_begin = 0;
  int var_end = 0;
  // k x n for the primal block (row space = H), n x (n-k) for dual blocks
  // (column space = a point of the dual Grassmannian).
  AffineMatrix chart;
};

struct Formulation {
  FormulationMode mode = FormulationMode::Paired;
  SchubertProblem problem;
  std::vector<Flag> flags;
  std::vector<std::size_t> hypersurfaces;  // 0-based, hybrid only
  PolynomialSystem system;
  std::vector<ChartBlock> blocks;  // blocks[0] is the primal chart

  const ChartBlock& primal() const { return blocks.front(); }
};

// Raised when the positional pairing meets an infeasible pair.
// `suggestion`, when present, is a 0-based reordering of the conditions that
// works; hypersurface conditions keep their positions.
class PairingError : public InvalidInput {
 public:
  PairingError(const std::string& what, std::optional<std::vector<std::size_t>> suggestion)
      : InvalidInput(what), suggestion_(std::move(suggestion)) {}
  const std::optional<std::vector<std::size_t>>& suggestion() const { return suggestion_; }

 private:
  std::optional<std::vector<std::size_t>> suggestion_;
};

Polynomial affine_to_polynomial(const AffineExpr& e);

// Determinant of a square matrix of polynomials by Laplace expansion along
// rows, memoised over column subsets. Rows made only of constants are
// finished numerically.
Polynomial symbolic_det(const std::vector<std::vector<Polynomial>>& rows);

// All (b_i+k-i+1)-minors of [chart; F_{b_i}] for i = 1..k, skipping vacuous
// indices. Identically vanishing minors are kept as zero polynomials so the
// count matches minor_count.
PolynomialSystem minor_system(const AffineMatrix& chart, const SchubertCondition& c,
                              const Flag& f, int n_vars, const std::string& label = "c");

// sum_i C(n, b_i+k-i+1) C(k+b_i, b_i+k-i+1), out-of-range binomials zero.
std::uint64_t minor_count(const SchubertCondition& c);

// Entries of M N as polynomials; all-zero entries are dropped. Throws
// ShapeError on shape mismatch and InvalidInput when the two charts share
// variables.
PolynomialSystem bilinear_block(const AffineMatrix& m, const AffineMatrix& nmat, int n_vars,
                                const std::string& label = "MN");

Formulation primal_minors(const SchubertProblem& p, const std::vector<Flag>& flags);
Formulation primal_dual(const SchubertProblem& p, const std::vector<Flag>& flags);
Formulation paired(const SchubertProblem& p, const std::vector<Flag>& flags);
// `hypersurfaces` are 0-based condition indices, each a box condition.
Formulation hybrid(const SchubertProblem& p, const std::vector<Flag>& flags,
                   const std::vector<std::size_t>& hypersurfaces);
Formulation formulate(FormulationMode mode, const SchubertProblem& p,
                      const std::vector<Flag>& flags,
                      const std::vector<std::size_t>& hypersurfaces = {});

// Whether positional pairing succeeds for this order (0-based indices).
bool pairing_feasible(const SchubertProblem& p, const std::vector<std::size_t>& order,
                      const std::vector<std::size_t>& hypersurfaces);
// Brute-force search over reorderings of the non-hypersurface conditions.
std::optional<std::vector<std::size_t>> find_feasible_order(
    const SchubertProblem& p, const std::vector<std::size_t>& hypersurfaces);

// Reorders conditions and flags together: result[i] = input[perm[i]].
SchubertProblem permute_problem(const SchubertProblem& p, const std::vector<std::size_t>& perm);
std::vector<Flag> permute_flags(const std::vector<Flag>& flags,
                                const std::vector<std::size_t>& perm);

// H = primal chart at x, as a k x n matrix.
CMatrix primal_plane(const Formulation& f, std::span<const Complex> x);

}  // namespace schubert
