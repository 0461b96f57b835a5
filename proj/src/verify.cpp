#include "schubert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

PlaneSolution extract_planes(const Formulation& f, std::span<const Complex> x,
                             double residual_tol) {
  if (x.size() != static_cast<std::size_t>(f.system.n_vars()))
    throw ShapeError("extract_planes: point length mismatch");
  const double residual = norm2(f.system.evaluate(x));
  if (!(residual < residual_tol * (1.0 + norm2(x)))) {
    std::ostringstream msg;
    msg << "extract_planes: residual " << residual << " too large";
    throw InvalidInput(msg.str());
  }
  PlaneSolution s;
  s.h = f.primal().chart.evaluate(x);
  for (std::size_t b = 1; b < f.blocks.size(); ++b) s.duals.push_back(f.blocks[b].chart.evaluate(x));
  return s;
}

bool check_membership(const CMatrix& h, const SchubertCondition& c, const Flag& f, double tol) {
  const auto k = static_cast<std::size_t>(c.k());
  if (h.rows() != k || h.cols() != f.n() || static_cast<std::size_t>(c.n()) != f.n())
    throw ShapeError("check_membership: dimensions disagree");
  const CMatrix q = orthonormal_rows(h, tol);
  if (q.rows() != k) throw InvalidInput("check_membership: H does not have rank k");
  for (int i = 1; i <= c.k(); ++i) {
    const auto b = static_cast<std::size_t>(c.at(i));
    const CMatrix stacked = stack_rows(q, orthonormal_rows(f.subspace(b), tol));
    if (numeric_rank(stacked, tol) > b + k - static_cast<std::size_t>(i)) return false;
  }
  return true;
}

CMatrix annihilator(const CMatrix& h) { return nullspace(h); }

double dual_angle(const PlaneSolution& s) {
  const CMatrix perp = annihilator(s.h).transpose();
  double worst = 0.0;
  for (const auto& k : s.duals) worst = std::max(worst, principal_angle_bound(k.transpose(), perp));
  return worst;
}

double dual_residual(const PlaneSolution& s) {
  double worst = 0.0;
  for (const auto& k : s.duals) {
    const double scale = s.h.frobenius_norm() * k.frobenius_norm();
    worst = std::max(worst, (s.h * k).frobenius_norm() / scale);
  }
  return worst;
}

std::string VerifyReport::to_table() const {
  std::ostringstream out;
  const std::size_t conds = table.empty() ? 0 : table.front().size();
  out << "plane";
  for (std::size_t c = 0; c < conds; ++c) out << "  c" << c + 1;
  out << '\n';
  for (std::size_t p = 0; p < table.size(); ++p) {
    out << p + 1 << std::string(p + 1 < 10 ? 5 : 4, ' ');
    for (bool ok : table[p]) out << (ok ? " ok " : " FAIL");
    out << '\n';
  }
  out << "planes passing: " << passing_planes << " / expected: " << expected;
  return out.str();
}

VerifyReport verify_instance(const SchubertProblem& p, const std::vector<Flag>& flags,
                             const std::vector<PlaneSolution>& planes, double tol) {
  VerifyReport r;
  r.expected = lr_number(p);
  for (const auto& plane : planes) {
    std::vector<bool> row;
    bool ok = true;
    for (std::size_t c = 0; c < p.size(); ++c) {
      bool member = false;
      try {
        member = check_membership(plane.h, p.conditions[c], flags.at(c), tol);
      } catch (const InvalidInput&) {
        member = false;
      }
      row.push_back(member);
      ok = ok && member;
    }
    if (ok) ++r.passing_planes;
    r.table.push_back(std::move(row));
  }
  r.all_pass = r.passing_planes == planes.size();
  r.count_matches = r.passing_planes == r.expected;
  return r;
}

}  // namespace schubert
