#include "schubert/combinat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

SchubertCondition::SchubertCondition(int n, std::vector<int> beta)
    : n_(n), beta_(std::move(beta)) {
  const int k = static_cast<int>(beta_.size());
  if (k <= 0 || k >= n_) {
    std::ostringstream msg;
    msg << "Schubert condition needs 0 < k < n (got k=" << k << ", n=" << n_ << ")";
    throw InvalidInput(msg.str());
  }
  for (int i = 0; i < k; ++i) {
    const int b = beta_[static_cast<std::size_t>(i)];
    if (b < 1 || b > n_ || (i > 0 && b <= beta_[static_cast<std::size_t>(i - 1)])) {
      throw InvalidInput("Schubert condition " + to_string() +
                         " is not a strictly increasing subset of [" +
                         std::to_string(n_) + "]");
    }
  }
}

std::string SchubertCondition::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < beta_.size(); ++i) out << (i ? "," : "") << beta_[i];
  out << ')';
  return out.str();
}

int Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Partition::fits_box(int rows, int cols) const {
  int nonzero = 0;
  for (int p : parts) {
    if (p > cols || p < 0) return false;
    if (p > 0) ++nonzero;
  }
  return nonzero <= rows;
}

std::string Partition::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "," : "") << parts[i];
  out << ')';
  return out.str();
}

int codim(const SchubertCondition& c) {
  int free = 0;
  for (int i = 1; i <= c.k(); ++i) free += c.at(i) - i;
  return c.k() * (c.n() - c.k()) - free;
}

SchubertCondition dual_condition(const SchubertCondition& c) {
  const int n = c.n();
  std::vector<bool> in_beta(static_cast<std::size_t>(n + 1), false);
  for (int b : c.beta()) in_beta[static_cast<std::size_t>(b)] = true;
  std::vector<int> dual;
  for (int j = 1; j <= n; ++j)
    if (!in_beta[static_cast<std::size_t>(j)]) dual.push_back(n + 1 - j);
  std::sort(dual.begin(), dual.end());
  return SchubertCondition(n, std::move(dual));
}

SchubertCondition trivial_condition(int n, int k) {
  std::vector<int> beta(static_cast<std::size_t>(k));
  std::iota(beta.begin(), beta.end(), n - k + 1);
  return SchubertCondition(n, std::move(beta));
}

SchubertCondition box_condition(int n, int k) {
  std::vector<int> beta(static_cast<std::size_t>(k));
  beta[0] = n - k;
  for (int i = 1; i < k; ++i) beta[static_cast<std::size_t>(i)] = n - k + i + 1;
  return SchubertCondition(n, std::move(beta));
}

bool is_box_condition(const SchubertCondition& c) {
  return c == box_condition(c.n(), c.k());
}

std::vector<SchubertCondition> all_conditions(int n, int k) {
  std::vector<SchubertCondition> out;
  std::vector<int> beta(static_cast<std::size_t>(k));
  std::iota(beta.begin(), beta.end(), 1);
  while (true) {
    out.emplace_back(n, beta);
    int i = k - 1;
    while (i >= 0 && beta[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++beta[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      beta[static_cast<std::size_t>(j)] = beta[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

int total_codim(const SchubertProblem& p) {
  int sum = 0;
  for (const auto& c : p.conditions) sum += codim(c);
  return sum;
}

bool validate_problem(const SchubertProblem& p) {
  if (p.conditions.empty()) throw InvalidInput("Schubert problem has no conditions");
  for (const auto& c : p.conditions) {
    if (c.n() != p.n || c.k() != p.k) {
      throw InvalidInput("condition " + c.to_string() + " does not live on Gr(" +
                         std::to_string(p.k) + "," + std::to_string(p.n) + ")");
    }
  }
  return total_codim(p) == p.dimension();
}

Partition condition_to_partition(const SchubertCondition& c) {
  Partition lambda;
  const int n = c.n();
  const int k = c.k();
  for (int i = 1; i <= k; ++i) lambda.parts.push_back(n - k + i - c.at(i));
  std::sort(lambda.parts.begin(), lambda.parts.end(), std::greater<>());
  return lambda;
}

bool feasible_pair(const SchubertCondition& b, const SchubertCondition& g) {
  if (b.n() != g.n() || b.k() != g.k())
    throw InvalidInput("feasible_pair: conditions live on different Grassmannians");
  const int n = b.n();
  const int k = b.k();
  for (int i = 1; i <= k; ++i)
    if (n + 1 - g.at(k + 1 - i) > b.at(i)) return false;
  return true;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw NumericalFailure("Littlewood-Richardson coefficient overflows 64 bits");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw NumericalFailure("Littlewood-Richardson coefficient overflows 64 bits");
  return r;
}

Partition padded(const Partition& p, int rows) {
  Partition out;
  for (int x : p.parts)
    if (x > 0) out.parts.push_back(x);
  std::sort(out.parts.begin(), out.parts.end(), std::greater<>());
  if (static_cast<int>(out.parts.size()) > rows) return out;  // caller checks fit
  out.parts.resize(static_cast<std::size_t>(rows), 0);
  return out;
}

// Tableau-based LR rule. Labels i are added as horizontal strips of size
// mu_i; after each stage the reverse reading word is checked to be a
// lattice word in the labels (i-1, i), which settles that pair for good.
class LrFiller {
 public:
  LrFiller(const Partition& mu, int rows, int cols, SchurExpansion& out)
      : mu_(mu), rows_(rows), cols_(cols), out_(out) {}

  void run(const Partition& lambda) {
    shape_ = lambda.parts;
    labels_.assign(static_cast<std::size_t>(rows_), {});
    stage(1);
  }

 private:
  void stage(int label) {
    if (label > static_cast<int>(mu_.parts.size()) ||
        mu_.parts[static_cast<std::size_t>(label - 1)] == 0) {
      Partition nu{shape_};
      out_[nu] = checked_add(out_[nu], 1);
      return;
    }
    const std::vector<int> before = shape_;
    strip(label, 0, mu_.parts[static_cast<std::size_t>(label - 1)], before);
  }

  // Distribute `remaining` boxes with this label over rows >= row. A
  // horizontal strip lets row r grow up to the length row r-1 had before
  // this stage began.
  void strip(int label, int row, int remaining, const std::vector<int>& before) {
    if (remaining == 0) {
      if (lattice_ok(label)) stage(label + 1);
      return;
    }
    if (row >= rows_) return;
    const auto r = static_cast<std::size_t>(row);
    const int limit = row == 0 ? cols_ : before[r - 1];
    const int room = std::min(limit - shape_[r], remaining);
    for (int add = room; add >= 0; --add) {
      shape_[r] += add;
      for (int a = 0; a < add; ++a) labels_[r].push_back(label);
      strip(label, row + 1, remaining - add, before);
      for (int a = 0; a < add; ++a) labels_[r].pop_back();
      shape_[r] -= add;
    }
  }

  bool lattice_ok(int label) const {
    if (label < 2) return true;
    int lower = 0, upper = 0;
    for (const auto& row : labels_) {
      for (auto it = row.rbegin(); it != row.rend(); ++it) {
        if (*it == label - 1) ++lower;
        if (*it == label) ++upper;
        if (upper > lower) return false;
      }
    }
    return true;
  }

  const Partition& mu_;
  int rows_;
  int cols_;
  SchurExpansion& out_;
  std::vector<int> shape_;
  std::vector<std::vector<int>> labels_;
};

}  // namespace

SchurExpansion lr_product(const Partition& lambda, const Partition& mu, int rows,
                          int cols) {
  SchurExpansion out;
  const Partition l = padded(lambda, rows);
  const Partition m = padded(mu, rows);
  if (!l.fits_box(rows, cols) || !m.fits_box(rows, cols)) return out;
  if (static_cast<int>(l.parts.size()) != rows || static_cast<int>(m.parts.size()) != rows)
    return out;
  LrFiller filler(m, rows, cols, out);
  filler.run(l);
  return out;
}

SchurExpansion lr_product(const SchurExpansion& element, const Partition& mu, int rows,
                          int cols) {
  SchurExpansion out;
  for (const auto& [lambda, coeff] : element) {
    if (coeff == 0) continue;
    for (const auto& [nu, c] : lr_product(lambda, mu, rows, cols)) {
      out[nu] = checked_add(out[nu], checked_mul(coeff, c));
    }
  }
  return out;
}

std::uint64_t lr_number(const SchubertProblem& p) {
  if (!validate_problem(p)) {
    std::ostringstream msg;
    msg << "not a Schubert problem: Σ|β| = " << total_codim(p)
        << " ≠ k(n−k) = " << p.dimension();
    throw InvalidInput(msg.str());
  }
  const int rows = p.k;
  const int cols = p.n - p.k;
  SchurExpansion element;
  element[Partition{std::vector<int>(static_cast<std::size_t>(rows), 0)}] = 1;
  for (const auto& c : p.conditions) {
    element = lr_product(element, condition_to_partition(c), rows, cols);
  }
  const Partition full{std::vector<int>(static_cast<std::size_t>(rows), cols)};
  const auto it = element.find(full);
  return it == element.end() ? 0 : it->second;
}

}  // namespace schubert
