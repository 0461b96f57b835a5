#include "schubert/formulate.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace schubert {

std::string to_string(FormulationMode mode) {
  switch (mode) {
    case FormulationMode::Primal: return "primal";
    case FormulationMode::Full: return "full";
    case FormulationMode::Paired: return "paired";
    case FormulationMode::Hybrid: return "hybrid";
  }
  return "unknown";
}

FormulationMode parse_mode(const std::string& name) {
  if (name == "primal") return FormulationMode::Primal;
  if (name == "full") return FormulationMode::Full;
  if (name == "paired") return FormulationMode::Paired;
  if (name == "hybrid") return FormulationMode::Hybrid;
  throw InvalidInput("unknown formulation '" + name + "' (expected primal|full|paired|hybrid)");
}

Polynomial affine_to_polynomial(const AffineExpr& e) {
  std::vector<Monomial> terms;
  terms.reserve(e.terms.size() + 1);
  if (e.constant != 0.0) terms.push_back({e.constant, {}});
  for (const auto& [v, c] : e.terms) terms.push_back({c, {{v, 1}}});
  return Polynomial(std::move(terms));
}

namespace {

bool is_constant(const Polynomial& p) { return p.degree() == 0; }

Complex constant_value(const Polynomial& p) {
  return p.is_zero() ? Complex{} : p.terms().front().coeff;
}

// Minors of a fixed ordered row selection, memoised by remaining columns.
class MinorExpander {
 public:
  MinorExpander(const std::vector<std::vector<Polynomial>>& rows,
                std::vector<std::size_t> row_sel)
      : rows_(rows), sel_(std::move(row_sel)) {
    // Rows from which on everything is constant.
    const_from_ = sel_.size();
    while (const_from_ > 0 &&
           std::all_of(rows_[sel_[const_from_ - 1]].begin(), rows_[sel_[const_from_ - 1]].end(),
                       is_constant))
      --const_from_;
  }

  Polynomial minor(std::uint32_t col_mask) { return expand(col_mask); }

 private:
  Polynomial expand(std::uint32_t mask) {
    if (mask == 0) return Polynomial::constant(1.0);
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const std::size_t level = sel_.size() - static_cast<std::size_t>(std::popcount(mask));
    Polynomial result;
    if (level >= const_from_) {
      result = Polynomial::constant(numeric_det(level, mask));
    } else {
      const auto& row = rows_[sel_[level]];
      int position = 0;
      std::vector<Monomial> acc;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const int col = std::countr_zero(rest);
        const Polynomial& entry = row[static_cast<std::size_t>(col)];
        if (!entry.is_zero()) {
          const Polynomial sub = expand(mask & ~(std::uint32_t{1} << col));
          if (!sub.is_zero()) {
            const Polynomial term = entry * sub * Complex(position % 2 == 0 ? 1.0 : -1.0);
            acc.insert(acc.end(), term.terms().begin(), term.terms().end());
          }
        }
        ++position;
      }
      result = Polynomial(std::move(acc));
    }
    memo_.emplace(mask, result);
    return result;
  }

  Complex numeric_det(std::size_t level, std::uint32_t mask) const {
    const std::size_t size = sel_.size() - level;
    CMatrix m(size, size);
    for (std::size_t r = 0; r < size; ++r) {
      std::size_t c = 0;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1, ++c) {
        const int col = std::countr_zero(rest);
        m(r, c) = constant_value(rows_[sel_[level + r]][static_cast<std::size_t>(col)]);
      }
    }
    return det(m);
  }

  const std::vector<std::vector<Polynomial>>& rows_;
  std::vector<std::size_t> sel_;
  std::size_t const_from_;
  std::unordered_map<std::uint32_t, Polynomial> memo_;
};

// Subsets of {0..n-1} of the given size, in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  if (size > n) return out;
  std::vector<std::size_t> s(size);
  std::iota(s.begin(), s.end(), std::size_t{0});
  while (true) {
    out.push_back(s);
    std::size_t i = size;
    while (i > 0 && s[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < size; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<Polynomial>> stacked_rows(const AffineMatrix& chart, const CMatrix& flag_rows) {
  std::vector<std::vector<Polynomial>> rows;
  for (std::size_t i = 0; i < chart.rows(); ++i) {
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < chart.cols(); ++j) row.push_back(affine_to_polynomial(chart(i, j)));
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < flag_rows.rows(); ++i) {
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < flag_rows.cols(); ++j) row.push_back(Polynomial::constant(flag_rows(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  std::uint64_t b = 1;
  for (std::int64_t i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return b;
}

}  // namespace

Polynomial symbolic_det(const std::vector<std::vector<Polynomial>>& rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw ShapeError("symbolic_det: matrix is not square");
  if (n > 31) throw ShapeError("symbolic_det: matrix too large");
  std::vector<std::size_t> sel(n);
  std::iota(sel.begin(), sel.end(), std::size_t{0});
  MinorExpander expander(rows, sel);
  return expander.minor(n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

std::uint64_t minor_count(const SchubertCondition& c) {
  const int n = c.n();
  const int k = c.k();
  std::uint64_t total = 0;
  for (int i = 1; i <= k; ++i) {
    const int a = c.at(i) + k - i + 1;
    total += binomial(n, a) * binomial(k + c.at(i), a);
  }
  return total;
}

PolynomialSystem minor_system(const AffineMatrix& chart, const SchubertCondition& c,
                              const Flag& f, int n_vars, const std::string& label) {
  const auto n = static_cast<std::size_t>(c.n());
  const auto k = static_cast<std::size_t>(c.k());
  if (chart.rows() != k || chart.cols() != n || f.n() != n)
    throw ShapeError("minor_system: chart must be k x n and match the flag");
  PolynomialSystem sys(n_vars);
  for (std::size_t i = 1; i <= k; ++i) {
    const auto b = static_cast<std::size_t>(c.at(static_cast<int>(i)));
    const std::size_t a = b + k - i + 1;
    if (a > std::min(k + b, n)) continue;
    const auto rows = stacked_rows(chart, f.subspace(b));
    for (const auto& row_sel : subsets(k + b, a)) {
      MinorExpander expander(rows, row_sel);
      for (const auto& col_sel : subsets(n, a)) {
        std::uint32_t mask = 0;
        for (std::size_t col : col_sel) mask |= std::uint32_t{1} << col;
        std::ostringstream name;
        name << label << ":i=" << i << ":minor";
        sys.add(expander.minor(mask), name.str());
      }
    }
  }
  return sys;
}

PolynomialSystem bilinear_block(const AffineMatrix& m, const AffineMatrix& nmat, int n_vars,
                                const std::string& label) {
  if (m.cols() != nmat.rows()) throw ShapeError("bilinear_block: inner dimensions differ");
  if (m.var_begin() < nmat.var_end() && nmat.var_begin() < m.var_end())
    throw InvalidInput("bilinear_block: the two charts share variables");
  PolynomialSystem sys(n_vars);
  std::vector<Polynomial> left, right;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t l = 0; l < m.cols(); ++l) left.push_back(affine_to_polynomial(m(i, l)));
  for (std::size_t l = 0; l < nmat.rows(); ++l)
    for (std::size_t j = 0; j < nmat.cols(); ++j) right.push_back(affine_to_polynomial(nmat(l, j)));
  const std::size_t inner = m.cols();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < nmat.cols(); ++j) {
      std::vector<Monomial> acc;
      for (std::size_t l = 0; l < inner; ++l) {
        const Polynomial prod = left[i * inner + l] * right[l * nmat.cols() + j];
        acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
      }
      Polynomial entry(std::move(acc));
      if (entry.is_zero()) continue;
      std::ostringstream name;
      name << label << '(' << i + 1 << ',' << j + 1 << ')';
      sys.add(std::move(entry), name.str());
    }
  }
  return sys;
}

SchubertProblem permute_problem(const SchubertProblem& p, const std::vector<std::size_t>& perm) {
  if (perm.size() != p.size()) throw InvalidInput("permutation length does not match the problem");
  std::vector<bool> seen(perm.size(), false);
  SchubertProblem out{p.n, p.k, {}};
  for (std::size_t idx : perm) {
    if (idx >= perm.size() || seen[idx]) throw InvalidInput("not a permutation of the conditions");
    seen[idx] = true;
    out.conditions.push_back(p.conditions[idx]);
  }
  return out;
}

std::vector<Flag> permute_flags(const std::vector<Flag>& flags, const std::vector<std::size_t>& perm) {
  if (perm.size() != flags.size()) throw InvalidInput("permutation length does not match the flags");
  std::vector<Flag> out;
  for (std::size_t idx : perm) out.push_back(flags.at(idx));
  return out;
}

namespace {

void check_inputs(const SchubertProblem& p, const std::vector<Flag>& flags) {
  if (!validate_problem(p)) {
    std::ostringstream msg;
    msg << "not a Schubert problem: Σ|β| = " << total_codim(p) << " ≠ k(n−k) = " << p.dimension();
    throw InvalidInput(msg.str());
  }
  if (flags.size() != p.size())
    throw InvalidInput("expected one flag per condition (" + std::to_string(p.size()) + "), got " +
                       std::to_string(flags.size()));
  for (const auto& f : flags)
    if (f.n() != static_cast<std::size_t>(p.n)) throw InvalidInput("flag size differs from n");
}

std::vector<std::size_t> non_hypersurface_order(std::size_t count,
                                                const std::vector<std::size_t>& order,
                                                const std::vector<std::size_t>& hypersurfaces) {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t idx = order[i];
    if (std::find(hypersurfaces.begin(), hypersurfaces.end(), i) == hypersurfaces.end())
      rest.push_back(idx);
  }
  return rest;
}

std::string describe_order(const std::vector<std::size_t>& order) {
  std::ostringstream out;
  for (std::size_t i = 0; i < order.size(); ++i) out << (i ? "," : "") << order[i] + 1;
  return out.str();
}

// Builds the chart blocks for the conditions listed in `rest`: a primal pair
// chart (or single / full-Grassmannian chart), then dual pair charts, the
// last one single when an odd number is left over.
std::vector<ChartBlock> build_paired_blocks(const SchubertProblem& p,
                                            const std::vector<Flag>& flags,
                                            const std::vector<std::size_t>& rest) {
  std::vector<ChartBlock> blocks;
  int offset = 0;
  const auto n = static_cast<std::size_t>(p.n);

  ChartBlock primal;
  primal.role = BlockRole::Primal;
  std::size_t used = 0;
  if (rest.empty()) {
    primal.chart = instantiate_primal(pattern_single(trivial_condition(p.n, p.k)),
                                      CMatrix::identity(n), offset);
  } else if (rest.size() == 1) {
    primal.conditions = {rest[0]};
    primal.chart = instantiate_primal(pattern_single(p.conditions[rest[0]]), flags[rest[0]], offset);
    used = 1;
  } else {
    primal.conditions = {rest[0], rest[1]};
    const CMatrix g = general_position_transform(flags[rest[0]], flags[rest[1]]);
    primal.chart = instantiate_primal(
        pattern_pair(p.conditions[rest[0]], p.conditions[rest[1]]), g, offset);
    used = 2;
  }
  primal.var_begin = primal.chart.var_begin();
  primal.var_end = primal.chart.var_end();
  offset = primal.var_end;
  blocks.push_back(std::move(primal));

  while (used < rest.size()) {
    ChartBlock dual;
    dual.role = BlockRole::Dual;
    if (rest.size() - used >= 2) {
      const std::size_t a = rest[used], b = rest[used + 1];
      dual.conditions = {a, b};
      const CMatrix g = general_position_transform(dual_flag(flags[a]), dual_flag(flags[b]));
      dual.chart = instantiate_primal(
                       pattern_pair(dual_condition(p.conditions[a]), dual_condition(p.conditions[b])),
                       g, offset)
                       .transpose();
      used += 2;
    } else {
      const std::size_t a = rest[used];
      dual.conditions = {a};
      dual.chart = instantiate_dual(p.conditions[a], flags[a], offset);
      used += 1;
    }
    dual.var_begin = dual.chart.var_begin();
    dual.var_end = dual.chart.var_end();
    offset = dual.var_end;
    blocks.push_back(std::move(dual));
  }
  return blocks;
}

std::string block_label(const ChartBlock& b) {
  std::ostringstream out;
  out << "MN[";
  for (std::size_t i = 0; i < b.conditions.size(); ++i) out << (i ? "," : "") << b.conditions[i] + 1;
  out << ']';
  return out.str();
}

void add_bilinear_equations(Formulation& f) {
  const ChartBlock& m = f.blocks.front();
  for (std::size_t b = 1; b < f.blocks.size(); ++b) {
    f.system.append(bilinear_block(m.chart, f.blocks[b].chart, f.system.n_vars(),
                                   block_label(f.blocks[b])));
  }
}

Formulation paired_impl(const SchubertProblem& p, const std::vector<Flag>& flags,
                        const std::vector<std::size_t>& hypersurfaces, FormulationMode mode) {
  check_inputs(p, flags);
  std::vector<std::size_t> identity(p.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  if (!pairing_feasible(p, identity, hypersurfaces)) {
    const auto suggestion = find_feasible_order(p, hypersurfaces);
    std::ostringstream msg;
    msg << "positional pairing of the conditions is infeasible";
    if (suggestion) msg << "; reorder with permutation " << describe_order(*suggestion);
    else msg << "; no reordering of the conditions is feasible";
    throw PairingError(msg.str(), suggestion);
  }
  Formulation f;
  f.mode = mode;
  f.problem = p;
  f.flags = flags;
  f.hypersurfaces = hypersurfaces;
  f.blocks = build_paired_blocks(p, flags, non_hypersurface_order(p.size(), identity, hypersurfaces));
  f.system = PolynomialSystem(f.blocks.back().var_end);
  add_bilinear_equations(f);

  if (!hypersurfaces.empty()) {
    const auto n = static_cast<std::size_t>(p.n);
    const auto k = static_cast<std::size_t>(p.k);
    for (std::size_t idx : hypersurfaces) {
      const auto rows = stacked_rows(f.primal().chart, flags[idx].subspace(n - k));
      f.system.add(symbolic_det(rows), "det[" + std::to_string(idx + 1) + "]");
    }
  }
  return f;
}

}  // namespace

bool pairing_feasible(const SchubertProblem& p, const std::vector<std::size_t>& order,
                      const std::vector<std::size_t>& hypersurfaces) {
  const auto rest = non_hypersurface_order(p.size(), order, hypersurfaces);
  if (rest.size() >= 2 && !feasible_pair(p.conditions[rest[0]], p.conditions[rest[1]]))
    return false;
  for (std::size_t i = 2; i + 1 < rest.size(); i += 2) {
    if (!feasible_pair(dual_condition(p.conditions[rest[i]]),
                       dual_condition(p.conditions[rest[i + 1]])))
      return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> find_feasible_order(
    const SchubertProblem& p, const std::vector<std::size_t>& hypersurfaces) {
  if (p.size() > 10) return std::nullopt;
  std::vector<std::size_t> free_positions;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::find(hypersurfaces.begin(), hypersurfaces.end(), i) == hypersurfaces.end())
      free_positions.push_back(i);
  std::vector<std::size_t> items = free_positions;
  auto by_condition = [&p](std::size_t a, std::size_t b) {
    return p.conditions[a] < p.conditions[b];
  };
  std::sort(items.begin(), items.end(), [&p](std::size_t a, std::size_t b) {
    if (p.conditions[a] != p.conditions[b]) return p.conditions[a] < p.conditions[b];
    return a < b;
  });
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Equal conditions compare equivalent, so only distinct arrangements are
  // visited.
  do {
    for (std::size_t i = 0; i < free_positions.size(); ++i) order[free_positions[i]] = items[i];
    if (pairing_feasible(p, order, hypersurfaces)) return order;
  } while (std::next_permutation(items.begin(), items.end(), by_condition));
  return std::nullopt;
}

Formulation primal_minors(const SchubertProblem& p, const std::vector<Flag>& flags) {
  check_inputs(p, flags);
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Formulation f;
  f.mode = FormulationMode::Primal;
  f.problem = p;
  f.flags = flags;
  const std::vector<std::size_t> first(order.begin(), order.begin() + std::min<std::size_t>(2, order.size()));
  if (first.size() == 2 && !feasible_pair(p.conditions[0], p.conditions[1]))
    throw PairingError("primal formulation: the first two conditions are infeasible as a pair",
                       find_feasible_order(p, {}));
  auto blocks = build_paired_blocks(p, flags, first);
  f.blocks = {std::move(blocks.front())};
  f.system = PolynomialSystem(f.primal().var_end);
  for (std::size_t i = first.size(); i < p.size(); ++i) {
    f.system.append(minor_system(f.primal().chart, p.conditions[i], flags[i], f.system.n_vars(),
                                 "rank[" + std::to_string(i + 1) + "]"));
  }
  return f;
}

Formulation primal_dual(const SchubertProblem& p, const std::vector<Flag>& flags) {
  check_inputs(p, flags);
  if (p.size() < 2) throw InvalidInput("the full primal-dual formulation needs at least two conditions");
  Formulation f;
  f.mode = FormulationMode::Full;
  f.problem = p;
  f.flags = flags;
  ChartBlock primal;
  primal.role = BlockRole::Primal;
  primal.conditions = {0};
  primal.chart = instantiate_primal(pattern_single(p.conditions[0]), flags[0], 0);
  primal.var_begin = primal.chart.var_begin();
  primal.var_end = primal.chart.var_end();
  int offset = primal.var_end;
  f.blocks.push_back(std::move(primal));
  for (std::size_t i = 1; i < p.size(); ++i) {
    ChartBlock dual;
    dual.role = BlockRole::Dual;
    dual.conditions = {i};
    dual.chart = instantiate_dual(p.conditions[i], flags[i], offset);
    dual.var_begin = dual.chart.var_begin();
    dual.var_end = dual.chart.var_end();
    offset = dual.var_end;
    f.blocks.push_back(std::move(dual));
  }
  f.system = PolynomialSystem(offset);
  add_bilinear_equations(f);
  return f;
}

Formulation paired(const SchubertProblem& p, const std::vector<Flag>& flags) {
  return paired_impl(p, flags, {}, FormulationMode::Paired);
}

Formulation hybrid(const SchubertProblem& p, const std::vector<Flag>& flags,
                   const std::vector<std::size_t>& hypersurfaces) {
  std::vector<std::size_t> sorted = hypersurfaces;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("hypersurface indices repeat");
  for (std::size_t idx : sorted) {
    if (idx >= p.size()) throw InvalidInput("hypersurface index out of range");
    if (!is_box_condition(p.conditions[idx]))
      throw InvalidInput("condition " + std::to_string(idx + 1) + " " +
                         p.conditions[idx].to_string() +
                         " is not the box condition and cannot be a hypersurface");
  }
  return paired_impl(p, flags, sorted, FormulationMode::Hybrid);
}

Formulation formulate(FormulationMode mode, const SchubertProblem& p,
                      const std::vector<Flag>& flags,
                      const std::vector<std::size_t>& hypersurfaces) {
  if (mode != FormulationMode::Hybrid && !hypersurfaces.empty())
    throw InvalidInput("hypersurfaces are only meaningful for the hybrid formulation");
  switch (mode) {
    case FormulationMode::Primal: return primal_minors(p, flags);
    case FormulationMode::Full: return primal_dual(p, flags);
    case FormulationMode::Paired: return paired(p, flags);
    case FormulationMode::Hybrid: return hybrid(p, flags, hypersurfaces);
  }
  throw InvalidInput("unknown formulation mode");
}

CMatrix primal_plane(const Formulation& f, std::span<const Complex> x) {
  return f.primal().chart.evaluate(x);
}

}  // namespace schubert
