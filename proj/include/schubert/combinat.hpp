#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace schubert {

// A strictly increasing k-subset of {1, ..., n}. Entries are stored
// 1-indexed, as they are written in the literature.
class SchubertCondition {
 public:
  // Throws InvalidInput unless 0 < k < n and 1 <= b_1 < ... < b_k <= n.
  SchubertCondition(int n, std::vector<int> beta);

  int n() const { return n_; }
  int k() const { return static_cast<int>(beta_.size()); }
  const std::vector<int>& beta() const { return beta_; }
  // 1-based access: at(i) = beta_i.
  int at(int i) const { return beta_[static_cast<std::size_t>(i - 1)]; }

  std::string to_string() const;

  friend bool operator==(const SchubertCondition&, const SchubertCondition&) = default;
  friend auto operator<=>(const SchubertCondition&, const SchubertCondition&) = default;

 private:
  int n_;
  std::vector<int> beta_;
};

struct SchubertProblem {
  int n = 0;
  int k = 0;
  std::vector<SchubertCondition> conditions;

  std::size_t size() const { return conditions.size(); }
  int dimension() const { return k * (n - k); }
};

// Weakly decreasing parts, padded with zeros to length k.
struct Partition {
  std::vector<int> parts;

  int weight() const;
  bool fits_box(int rows, int cols) const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

// Codimension |beta| = k(n-k) - sum_i (beta_i - i).
int codim(const SchubertCondition& c);

// beta^perp = sorted { n+1-j : j not in beta }, a condition on Gr(n-k, n).
SchubertCondition dual_condition(const SchubertCondition& c);

// (n-k+1, ..., n): no constraint.
SchubertCondition trivial_condition(int n, int k);
// (n-k, n-k+2, ..., n): the hypersurface condition of codimension 1.
SchubertCondition box_condition(int n, int k);
bool is_box_condition(const SchubertCondition& c);
// Every condition on Gr(k, n) in lexicographic order.
std::vector<SchubertCondition> all_conditions(int n, int k);

// True iff sum codim = k(n-k). Throws InvalidInput when conditions disagree
// on (n, k) with the problem.
bool validate_problem(const SchubertProblem& p);
int total_codim(const SchubertProblem& p);

// lambda_i = n-k+i-beta_i.
Partition condition_to_partition(const SchubertCondition& c);

// Nonempty-intersection test for X_b E and X_g E':
// n+1-g_{k+1-i} <= b_i for all i.
bool feasible_pair(const SchubertCondition& b, const SchubertCondition& g);

// Elements of the cohomology ring of Gr(k, n) in the Schur basis.
using SchurExpansion = std::map<Partition, std::uint64_t>;

// s_lambda * s_mu by the Littlewood-Richardson rule, truncated to partitions
// fitting the rows x cols box. Throws NumericalFailure on 64-bit overflow.
SchurExpansion lr_product(const Partition& lambda, const Partition& mu, int rows, int cols);
SchurExpansion lr_product(const SchurExpansion& element, const Partition& mu, int rows,
                          int cols);

// N(beta): coefficient of the full box in the product of the conditions'
// Schur classes, multiplied left to right. Throws InvalidInput when p is not
// a Schubert problem.
std::uint64_t lr_number(const SchubertProblem& p);

}  // namespace schubert
