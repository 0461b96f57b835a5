#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schubert/linalg.hpp"

namespace schubert {

using ExtComplex = std::complex<long double>;

// Sparse exponent vector: (variable id, exponent >= 1), sorted by id.
using Exponents = std::vector<std::pair<int, int>>;

struct Monomial {
  Complex coeff;
  Exponents exponents;

  int degree() const;
};

// Coefficients whose magnitude falls below this after combining like terms
// are dropped.
inline constexpr double kCoefficientDropTolerance = 1e-14;

class Polynomial {
 public:
  Polynomial() = default;
  // Terms are combined, pruned and sorted by exponent vector.
  explicit Polynomial(std::vector<Monomial> terms);

  static Polynomial constant(Complex c);
  static Polynomial variable(int var, Complex coeff = 1.0);

  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  // Largest variable id referenced, or -1.
  int max_var() const;

  Complex evaluate(std::span<const Complex> x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex scale) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Monomial> terms_;
  int degree_ = 0;
};

struct SystemShape {
  int n_vars = 0;
  std::size_t n_polys = 0;
  std::map<int, std::size_t> degree_histogram;

  // "(V, P, {d:c, ...})"
  std::string to_string() const;
  friend bool operator==(const SystemShape&, const SystemShape&) = default;
};

class PolynomialSystem {
 public:
  PolynomialSystem() = default;
  explicit PolynomialSystem(int n_vars) : n_vars_(n_vars) {}

  // Throws InvalidInput if p references a variable >= n_vars.
  void add(Polynomial p, std::string label);
  // Appends the polynomials of `other`, which must have the same n_vars.
  void append(const PolynomialSystem& other);

  int n_vars() const { return n_vars_; }
  std::size_t size() const { return polys_.size(); }
  bool square() const { return static_cast<std::size_t>(n_vars_) == polys_.size(); }
  const Polynomial& poly(std::size_t i) const { return polys_[i]; }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int max_degree() const;
  bool has_real_coefficients() const;
  // Hash of the exact coefficients and exponents.
  std::uint64_t fingerprint() const;

  CVector evaluate(std::span<const Complex> x) const;
  // Same, accumulated in long double.
  std::vector<ExtComplex> evaluate_extended(std::span<const Complex> x) const;
  CMatrix jacobian(std::span<const Complex> x) const;
  void evaluate_with_jacobian(std::span<const Complex> x, CVector& values, CMatrix& jac) const;

  SystemShape shape() const;

  // Polynomial-wise sum; both systems must agree in size and n_vars.
  friend PolynomialSystem operator+(const PolynomialSystem& a, const PolynomialSystem& b);

 private:
  void check_length(std::size_t len) const;

  int n_vars_ = 0;
  std::vector<Polynomial> polys_;
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
};

// Constant Hessians of a system of degree <= 2. Throws InvalidInput otherwise.
std::vector<CMatrix> hessians(const PolynomialSystem& s);

// D^m f(x) in sparse symmetric form: for each sorted multiset of m variable
// ids, the vector (over polynomials) of the m-th partial derivative.
struct DerivativeTensor {
  int order = 0;
  std::size_t n_polys = 0;
  std::map<std::vector<int>, CVector> entries;

  // Number of ordered index tuples represented by a multiset.
  static double multiplicity(const std::vector<int>& multiset);
};

DerivativeTensor derivative_tensor(const PolynomialSystem& s, std::span<const Complex> x,
                                   int order);

}  // namespace schubert
