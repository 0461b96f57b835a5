#include "schubert/polysys.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : exponents) d += e;
  return d;
}

namespace {

Exponents multiply_exponents(const Exponents& a, const Exponents& b) {
  Exponents out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class T>
std::complex<T> power(std::complex<T> base, int e) {
  std::complex<T> r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <class T>
std::complex<T> evaluate_terms(const std::vector<Monomial>& terms, std::span<const Complex> x) {
  std::complex<T> sum = 0;
  for (const auto& m : terms) {
    std::complex<T> prod(static_cast<T>(m.coeff.real()), static_cast<T>(m.coeff.imag()));
    for (const auto& [v, e] : m.exponents) {
      const Complex xv = x[static_cast<std::size_t>(v)];
      prod *= power(std::complex<T>(static_cast<T>(xv.real()), static_cast<T>(xv.imag())), e);
    }
    sum += prod;
  }
  return sum;
}

}  // namespace

Polynomial::Polynomial(std::vector<Monomial> terms) {
  std::map<Exponents, Complex> combined;
  for (auto& m : terms) {
    std::erase_if(m.exponents, [](const auto& ve) { return ve.second == 0; });
    std::sort(m.exponents.begin(), m.exponents.end());
    combined[m.exponents] += m.coeff;
  }
  for (auto& [exps, c] : combined) {
    if (std::abs(c) < kCoefficientDropTolerance) continue;
    Monomial m{c, exps};
    degree_ = std::max(degree_, m.degree());
    terms_.push_back(std::move(m));
  }
}

Polynomial Polynomial::constant(Complex c) { return Polynomial({Monomial{c, {}}}); }

Polynomial Polynomial::variable(int var, Complex coeff) {
  return Polynomial({Monomial{coeff, {{var, 1}}}});
}

int Polynomial::max_var() const {
  int m = -1;
  for (const auto& t : terms_)
    if (!t.exponents.empty()) m = std::max(m, t.exponents.back().first);
  return m;
}

Complex Polynomial::evaluate(std::span<const Complex> x) const {
  return evaluate_terms<double>(terms_, x);
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Monomial> all(terms_);
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return Polynomial(std::move(all));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * Complex(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<Monomial> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_)
      all.push_back({a.coeff * b.coeff, multiply_exponents(a.exponents, b.exponents)});
  return Polynomial(std::move(all));
}

Polynomial Polynomial::operator*(Complex scale) const {
  std::vector<Monomial> all(terms_);
  for (auto& m : all) m.coeff *= scale;
  return Polynomial(std::move(all));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff ||
        a.terms_[i].exponents != b.terms_[i].exponents)
      return false;
  }
  return true;
}

std::string SystemShape::to_string() const {
  std::ostringstream out;
  out << '(' << n_vars << ", " << n_polys << ", {";
  bool first = true;
  for (const auto& [d, c] : degree_histogram) {
    out << (first ? "" : ", ") << d << ':' << c;
    first = false;
  }
  out << "})";
  return out.str();
}

void PolynomialSystem::add(Polynomial p, std::string label) {
  if (p.max_var() >= n_vars_) {
    throw InvalidInput("polynomial '" + label + "' references variable " +
                       std::to_string(p.max_var()) + " but the system has " +
                       std::to_string(n_vars_) + " variables");
  }
  degrees_.push_back(p.degree());
  polys_.push_back(std::move(p));
  labels_.push_back(std::move(label));
}

void PolynomialSystem::append(const PolynomialSystem& other) {
  if (other.n_vars_ != n_vars_) throw ShapeError("append: variable counts differ");
  for (std::size_t i = 0; i < other.size(); ++i) add(other.polys_[i], other.labels_[i]);
}

int PolynomialSystem::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

bool PolynomialSystem::has_real_coefficients() const {
  for (const auto& p : polys_)
    for (const auto& m : p.terms())
      if (m.coeff.imag() != 0.0) return false;
  return true;
}

std::uint64_t PolynomialSystem::fingerprint() const {
  // FNV-1a over the raw bytes.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  mix(&n_vars_, sizeof n_vars_);
  for (const auto& p : polys_) {
    const std::size_t count = p.terms().size();
    mix(&count, sizeof count);
    for (const auto& m : p.terms()) {
      const double parts[2] = {m.coeff.real(), m.coeff.imag()};
      mix(parts, sizeof parts);
      for (const auto& [v, e] : m.exponents) {
        mix(&v, sizeof v);
        mix(&e, sizeof e);
      }
    }
  }
  return h;
}

void PolynomialSystem::check_length(std::size_t len) const {
  if (len != static_cast<std::size_t>(n_vars_)) {
    throw ShapeError("point has " + std::to_string(len) + " coordinates but the system has " +
                     std::to_string(n_vars_) + " variables");
  }
}

CVector PolynomialSystem::evaluate(std::span<const Complex> x) const {
  check_length(x.size());
  CVector out(polys_.size());
  for (std::size_t i = 0; i < polys_.size(); ++i) out[i] = polys_[i].evaluate(x);
  return out;
}

std::vector<ExtComplex> PolynomialSystem::evaluate_extended(std::span<const Complex> x) const {
  check_length(x.size());
  std::vector<ExtComplex> out(polys_.size());
  for (std::size_t i = 0; i < polys_.size(); ++i)
    out[i] = evaluate_terms<long double>(polys_[i].terms(), x);
  return out;
}

void PolynomialSystem::evaluate_with_jacobian(std::span<const Complex> x, CVector& values,
                                              CMatrix& jac) const {
  check_length(x.size());
  const auto nv = static_cast<std::size_t>(n_vars_);
  values.assign(polys_.size(), Complex{});
  jac = CMatrix(polys_.size(), nv);
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    Complex sum = 0.0;
    for (const auto& m : polys_[i].terms()) {
      Complex prod = m.coeff;
      for (const auto& [v, e] : m.exponents) prod *= power(x[static_cast<std::size_t>(v)], e);
      sum += prod;
      for (std::size_t a = 0; a < m.exponents.size(); ++a) {
        const auto [va, ea] = m.exponents[a];
        Complex d = m.coeff * static_cast<double>(ea) *
                    power(x[static_cast<std::size_t>(va)], ea - 1);
        for (std::size_t b = 0; b < m.exponents.size(); ++b) {
          if (b == a) continue;
          const auto [vb, eb] = m.exponents[b];
          d *= power(x[static_cast<std::size_t>(vb)], eb);
        }
        jac(i, static_cast<std::size_t>(va)) += d;
      }
    }
    values[i] = sum;
  }
}

CMatrix PolynomialSystem::jacobian(std::span<const Complex> x) const {
  CVector values;
  CMatrix jac;
  evaluate_with_jacobian(x, values, jac);
  return jac;
}

SystemShape PolynomialSystem::shape() const {
  SystemShape s{n_vars_, polys_.size(), {}};
  for (int d : degrees_) ++s.degree_histogram[d];
  return s;
}

PolynomialSystem operator+(const PolynomialSystem& a, const PolynomialSystem& b) {
  if (a.n_vars_ != b.n_vars_ || a.size() != b.size())
    throw ShapeError("system sum: shapes differ");
  PolynomialSystem out(a.n_vars_);
  for (std::size_t i = 0; i < a.size(); ++i) out.add(a.polys_[i] + b.polys_[i], a.labels_[i]);
  return out;
}

std::vector<CMatrix> hessians(const PolynomialSystem& s) {
  if (s.max_degree() > 2) throw InvalidInput("hessians: system has degree above 2");
  const auto nv = static_cast<std::size_t>(s.n_vars());
  std::vector<CMatrix> out;
  for (const auto& p : s.polys()) {
    CMatrix h(nv, nv);
    for (const auto& m : p.terms()) {
      if (m.degree() != 2) continue;
      if (m.exponents.size() == 1) {
        const auto v = static_cast<std::size_t>(m.exponents[0].first);
        h(v, v) += 2.0 * m.coeff;
      } else {
        const auto a = static_cast<std::size_t>(m.exponents[0].first);
        const auto b = static_cast<std::size_t>(m.exponents[1].first);
        h(a, b) += m.coeff;
        h(b, a) += m.coeff;
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

double DerivativeTensor::multiplicity(const std::vector<int>& multiset) {
  double r = 1.0;
  std::size_t i = 0;
  int position = 0;
  while (i < multiset.size()) {
    std::size_t j = i;
    while (j < multiset.size() && multiset[j] == multiset[i]) ++j;
    for (std::size_t c = 1; c <= j - i; ++c) {
      ++position;
      r *= static_cast<double>(position) / static_cast<double>(c);
    }
    i = j;
  }
  return r;
}

DerivativeTensor derivative_tensor(const PolynomialSystem& s, std::span<const Complex> x,
                                   int order) {
  if (order < 1) throw InvalidInput("derivative_tensor: order must be positive");
  if (x.size() != static_cast<std::size_t>(s.n_vars()))
    throw ShapeError("derivative_tensor: point length mismatch");
  DerivativeTensor t{order, s.size(), {}};
  std::vector<int> taken;
  for (std::size_t p = 0; p < s.size(); ++p) {
    for (const auto& m : s.poly(p).terms()) {
      if (m.degree() < order) continue;
      taken.assign(m.exponents.size(), 0);
      // Enumerate sub-multisets of the monomial's variables of size `order`.
      std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
        if (left == 0) {
          Complex value = m.coeff;
          std::vector<int> multiset;
          for (std::size_t a = 0; a < m.exponents.size(); ++a) {
            const auto [v, e] = m.exponents[a];
            const int s_a = taken[a];
            for (int f = 0; f < s_a; ++f) value *= static_cast<double>(e - f);
            value *= power(x[static_cast<std::size_t>(v)], e - s_a);
            for (int f = 0; f < s_a; ++f) multiset.push_back(v);
          }
          auto& slot = t.entries[multiset];
          if (slot.empty()) slot.assign(s.size(), Complex{});
          slot[p] += value;
          return;
        }
        if (idx == m.exponents.size()) return;
        const int cap = std::min(left, m.exponents[idx].second);
        for (int c = cap; c >= 0; --c) {
          taken[idx] = c;
          rec(idx + 1, left - c);
        }
        taken[idx] = 0;
      };
      rec(0, order);
    }
  }
  return t;
}

}  // namespace schubert
