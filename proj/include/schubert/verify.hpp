#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schubert/combinat.hpp"
#include "schubert/flags.hpp"
#include "schubert/formulate.hpp"

namespace schubert {

struct PlaneSolution {
  CMatrix h;                  // k x n, row space = the solution plane
  std::vector<CMatrix> duals;  // n x (n-k), one per dual chart block
  std::optional<std::size_t> cluster;
};

// Substitutes x into every chart block. Throws InvalidInput when
// |f(x)| >= residual_tol (1 + |x|).
PlaneSolution extract_planes(const Formulation& f, std::span<const Complex> x,
                             double residual_tol = 1e-8);

// rank([H; F_{b_i}]) <= b_i + k - i for all i, ranks taken on orthonormalised
// rows with relative tolerance tol. Throws InvalidInput when H does not have
// rank k.
bool check_membership(const CMatrix& h, const SchubertCondition& c, const Flag& f,
                      double tol = 1e-8);

// n x (n-k) matrix whose columns span {v : H v = 0}.
CMatrix annihilator(const CMatrix& h);

// Largest principal-angle bound between the column space of each dual block
// and the null space of H.
double dual_angle(const PlaneSolution& s);
// max_i |H K_i|_F / (|H|_F |K_i|_F).
double dual_residual(const PlaneSolution& s);

struct VerifyReport {
  // table[plane][condition]
  std::vector<std::vector<bool>> table;
  std::size_t passing_planes = 0;
  std::uint64_t expected = 0;
  bool all_pass = false;
  bool count_matches = false;

  std::string to_table() const;
};

VerifyReport verify_instance(const SchubertProblem& p, const std::vector<Flag>& flags,
                             const std::vector<PlaneSolution>& planes, double tol = 1e-8);

}  // namespace schubert
