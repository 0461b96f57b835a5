// Shared fixtures and independent reference computations for the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "schubert/combinat.hpp"
#include "schubert/flags.hpp"
#include "schubert/polysys.hpp"
#include "schubert/random.hpp"

namespace support {

using namespace schubert;

inline SchubertProblem gr26() {
  return {6, 2, std::vector<SchubertCondition>(4, SchubertCondition(6, {3, 6}))};
}

// Six box conditions followed by four three-box conditions on Gr(3,9).
inline SchubertProblem gr39() {
  SchubertProblem p{9, 3, {}};
  for (int i = 0; i < 6; ++i) p.conditions.emplace_back(9, std::vector<int>{6, 8, 9});
  for (int i = 0; i < 4; ++i) p.conditions.emplace_back(9, std::vector<int>{4, 8, 9});
  return p;
}

inline SchubertCondition random_condition(int n, int k, Rng& rng) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  std::vector<int> beta(pool.begin(), pool.begin() + k);
  std::sort(beta.begin(), beta.end());
  return SchubertCondition(n, beta);
}

// Conditions of positive codimension whose codimensions add up to k(n-k),
// at least two of them.
inline SchubertProblem random_problem(int n, int k, Rng& rng) {
  const auto all = all_conditions(n, k);
  while (true) {
    SchubertProblem p{n, k, {}};
    int left = k * (n - k);
    while (left > 0) {
      std::vector<SchubertCondition> fits;
      for (const auto& c : all)
        if (codim(c) >= 1 && codim(c) <= left) fits.push_back(c);
      const auto& c = fits[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(fits.size()) - 1))];
      p.conditions.push_back(c);
      left -= codim(c);
    }
    if (p.size() >= 2) return p;
  }
}

// ---------------------------------------------------------------------------
// Schur multiplication through bialternants in k variables:
// s_lambda * a_{mu+delta} = sum_nu c^nu a_{nu+delta}, and c^nu is the
// coefficient of x^{nu+delta} on the left.

using Exps = std::vector<int>;
using Poly = std::map<Exps, long long>;

inline void ssyt_fill(const std::vector<int>& shape, int vars, std::vector<std::vector<int>>& t,
                      std::size_t r, std::size_t c, Poly& out) {
  if (r == shape.size()) {
    Exps e(static_cast<std::size_t>(vars), 0);
    for (const auto& row : t)
      for (int v : row) ++e[static_cast<std::size_t>(v)];
    ++out[e];
    return;
  }
  if (c == static_cast<std::size_t>(shape[r])) {
    ssyt_fill(shape, vars, t, r + 1, 0, out);
    return;
  }
  int lo = c > 0 ? t[r][c - 1] : 0;
  if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
  for (int v = lo; v < vars; ++v) {
    t[r][c] = v;
    ssyt_fill(shape, vars, t, r, c + 1, out);
  }
}

inline Poly schur_monomials(const std::vector<int>& lambda, int vars) {
  std::vector<int> shape;
  for (int p : lambda)
    if (p > 0) shape.push_back(p);
  Poly out;
  if (static_cast<int>(shape.size()) > vars) return out;
  std::vector<std::vector<int>> t;
  for (int p : shape) t.emplace_back(static_cast<std::size_t>(p), 0);
  ssyt_fill(shape, vars, t, 0, 0, out);
  return out;
}

inline std::map<std::vector<int>, long long> schur_product_oracle(const std::vector<int>& lambda,
                                                                  const std::vector<int>& mu,
                                                                  int rows, int cols) {
  const int k = rows;
  const Poly s = schur_monomials(lambda, k);
  // a_{mu+delta} = sum over permutations of sign * x^{sigma(mu+delta)}
  std::vector<int> md(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    md[static_cast<std::size_t>(i)] = (i < static_cast<int>(mu.size()) ? mu[static_cast<std::size_t>(i)] : 0) + (k - 1 - i);
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  Poly product;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    Exps e(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = md[static_cast<std::size_t>(i)];
    for (const auto& [m, c] : s) {
      Exps sum = e;
      for (int i = 0; i < k; ++i) sum[static_cast<std::size_t>(i)] += m[static_cast<std::size_t>(i)];
      product[sum] += (inversions % 2 == 0 ? 1 : -1) * c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, long long> out;
  for (const auto& [e, c] : product) {
    if (c == 0) continue;
    bool strict = true;
    for (int i = 0; i + 1 < k; ++i)
      if (e[static_cast<std::size_t>(i)] <= e[static_cast<std::size_t>(i + 1)]) strict = false;
    if (!strict) continue;
    std::vector<int> nu(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) nu[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)] - (k - 1 - i);
    if (nu[0] > cols) continue;
    out[nu] += c;
  }
  return out;
}

// Coefficient of the full box in the product of the given partitions.
inline long long box_coefficient_oracle(const std::vector<std::vector<int>>& parts, int rows,
                                        int cols) {
  std::map<std::vector<int>, long long> current{{std::vector<int>(static_cast<std::size_t>(rows), 0), 1}};
  for (const auto& mu : parts) {
    std::map<std::vector<int>, long long> next;
    for (const auto& [lambda, c] : current)
      for (const auto& [nu, d] : schur_product_oracle(lambda, mu, rows, cols)) next[nu] += c * d;
    current = std::move(next);
  }
  return current[std::vector<int>(static_cast<std::size_t>(rows), cols)];
}

// Pieri rule: multiply by one-row classes only.
inline std::uint64_t pieri_box_count(const std::vector<int>& rows_sizes, int k, int m) {
  std::map<std::vector<int>, std::uint64_t> current{{std::vector<int>(static_cast<std::size_t>(k), 0), 1}};
  for (int r : rows_sizes) {
    std::map<std::vector<int>, std::uint64_t> next;
    for (const auto& [lambda, c] : current) {
      std::vector<int> mu = lambda;
      std::function<void(std::size_t, int)> add = [&](std::size_t i, int left) {
        if (i == lambda.size()) {
          if (left == 0) next[mu] += c;
          return;
        }
        const int cap = i == 0 ? m : lambda[i - 1];
        for (int v = lambda[i]; v <= cap && v - lambda[i] <= left; ++v) {
          mu[i] = v;
          add(i + 1, left - (v - lambda[i]));
        }
        mu[i] = lambda[i];
      };
      add(0, r);
    }
    current = std::move(next);
  }
  return current[std::vector<int>(static_cast<std::size_t>(k), m)];
}

// Standard Young tableaux of a rectangle by the hook length formula.
inline std::uint64_t syt_rectangle(int rows, int cols) {
  long double v = 1.0L;
  int cell = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      ++cell;
      const int hook = (cols - j - 1) + (rows - i - 1) + 1;
      v = v * cell / hook;
    }
  return static_cast<std::uint64_t>(std::llround(v));
}

// ---------------------------------------------------------------------------
// Extended-precision Newton.

using Mp = boost::multiprecision::cpp_complex_100;
using MpReal = boost::multiprecision::cpp_bin_float_100;
using MpVector = std::vector<Mp>;

inline Mp to_mp(Complex z) { return Mp(MpReal(z.real()), MpReal(z.imag())); }

inline MpVector to_mp(const CVector& x) {
  MpVector out;
  for (const auto& z : x) out.push_back(to_mp(z));
  return out;
}

inline Mp mp_power(const Mp& z, int e) {
  Mp r(1);
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

inline void mp_eval(const PolynomialSystem& s, const MpVector& x, MpVector& f,
                    std::vector<MpVector>& jac) {
  const std::size_t n = x.size();
  f.assign(s.size(), Mp(0));
  jac.assign(s.size(), MpVector(n, Mp(0)));
  for (std::size_t p = 0; p < s.size(); ++p) {
    for (const auto& m : s.poly(p).terms()) {
      Mp value = to_mp(m.coeff);
      for (const auto& [v, e] : m.exponents) value *= mp_power(x[static_cast<std::size_t>(v)], e);
      f[p] += value;
      for (std::size_t a = 0; a < m.exponents.size(); ++a) {
        Mp d = to_mp(m.coeff);
        for (std::size_t b = 0; b < m.exponents.size(); ++b) {
          const auto [v, e] = m.exponents[b];
          if (a == b) d *= Mp(MpReal(e)) * mp_power(x[static_cast<std::size_t>(v)], e - 1);
          else d *= mp_power(x[static_cast<std::size_t>(v)], e);
        }
        jac[p][static_cast<std::size_t>(m.exponents[a].first)] += d;
      }
    }
  }
}

inline MpReal mp_abs(const Mp& z) { return boost::multiprecision::abs(z); }

inline MpVector mp_solve(std::vector<MpVector> a, MpVector b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (mp_abs(a[r][c]) > mp_abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Mp factor = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= factor * a[c][j];
      b[r] -= factor * b[c];
    }
  }
  MpVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Mp s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// One Newton step in extended precision; returns the new point.
inline MpVector mp_newton_step(const PolynomialSystem& s, const MpVector& x) {
  MpVector f;
  std::vector<MpVector> jac;
  mp_eval(s, x, f, jac);
  const MpVector dx = mp_solve(jac, f);
  MpVector out = x;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] -= dx[i];
  return out;
}

inline MpVector mp_newton(const PolynomialSystem& s, const MpVector& x0, int iters) {
  MpVector x = x0;
  for (int i = 0; i < iters; ++i) x = mp_newton_step(s, x);
  return x;
}

inline MpReal mp_distance(const MpVector& a, const MpVector& b) {
  MpReal sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const MpReal d = mp_abs(a[i] - b[i]);
    sum += d * d;
  }
  return boost::multiprecision::sqrt(sum);
}

// |p(x)| / (1 + sum |c| |x^m|): the residual relative to the size of the
// terms, which is what roundoff allows for high-degree minors.
inline double relative_residual(const Polynomial& p, std::span<const Complex> x) {
  double scale = 1.0;
  for (const auto& m : p.terms()) {
    double t = std::abs(m.coeff);
    for (const auto& [v, e] : m.exponents) t *= std::pow(std::abs(x[static_cast<std::size_t>(v)]), e);
    scale += t;
  }
  return std::abs(p.evaluate(x)) / scale;
}

}  // namespace support
