#include "schubert/certify.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "schubert/errors.hpp"

namespace schubert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

void require_square(const PolynomialSystem& s, std::size_t len) {
  if (!s.square())
    throw InvalidInput("system not square: " + std::to_string(s.size()) + " equations in " +
                       std::to_string(s.n_vars()) + " variables");
  if (len != static_cast<std::size_t>(s.n_vars()))
    throw ShapeError("point has " + std::to_string(len) + " coordinates, system has " +
                     std::to_string(s.n_vars()) + " variables");
}

bool finite(std::span<const Complex> x) {
  for (const auto& z : x)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

AlphaBetaGamma alpha_beta_gamma(const PolynomialSystem& s, std::span<const Complex> x) {
  require_square(s, x.size());
  const AlphaBetaGamma unusable{kInf, kInf, kInf, true};
  if (!finite(x)) return unusable;

  const LuFactors lu = lu_decompose(s.jacobian(x));
  if (lu.singular) return unusable;

  const auto fx = s.evaluate_extended(x);
  CVector f(fx.size());
  for (std::size_t i = 0; i < fx.size(); ++i)
    f[i] = Complex(static_cast<double>(fx[i].real()), static_cast<double>(fx[i].imag()));

  AlphaBetaGamma r;
  r.beta = norm2(lu_solve(lu, f));

  for (int m = 2; m <= s.max_degree(); ++m) {
    const DerivativeTensor t = derivative_tensor(s, x, m);
    double sum_sq = 0.0;
    for (const auto& [multiset, column] : t.entries) {
      const double w = norm2(lu_solve(lu, column));
      sum_sq += DerivativeTensor::multiplicity(multiset) * w * w;
    }
    const double norm = std::sqrt(sum_sq) / factorial(m);
    if (norm > 0.0) r.gamma = std::max(r.gamma, std::pow(norm, 1.0 / (m - 1)));
  }
  r.alpha = r.beta * r.gamma;
  if (!std::isfinite(r.alpha) || !std::isfinite(r.beta)) return unusable;
  return r;
}

Certificate certify(const PolynomialSystem& s, std::span<const Complex> x) {
  const AlphaBetaGamma abg = alpha_beta_gamma(s, x);
  Certificate c;
  c.x.assign(x.begin(), x.end());
  c.beta_val = abg.beta;
  c.gamma_val = abg.gamma;
  c.alpha_val = abg.alpha;
  c.system_fingerprint = s.fingerprint();
  c.certified = !abg.singular && abg.alpha < kAlpha0;
  if (c.certified) {
    // |f| <= |Df| beta must hold; the Frobenius norm bounds |Df|.
    const double residual = norm2(s.evaluate(x));
    const double jac = s.jacobian(x).frobenius_norm();
    if (residual > abg.beta * jac * (1.0 + 1e-10) && residual > 0.0) c.certified = false;
  }
  return c;
}

bool distinct(const Certificate& a, const Certificate& b) {
  if (a.system_fingerprint != b.system_fingerprint)
    throw InvalidInput("distinct: certificates refer to different systems");
  if (a.x.size() != b.x.size()) throw ShapeError("distinct: point lengths differ");
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) d2 += std::norm(a.x[i] - b.x[i]);
  return std::sqrt(d2) > 2.0 * (a.beta_val + b.beta_val);
}

Clustering deduplicate(std::span<const Certificate> certs) {
  Clustering out;
  out.cluster_of.assign(certs.size(), std::nullopt);
  for (std::size_t i = 0; i < certs.size(); ++i) {
    if (!certs[i].certified) continue;
    for (std::size_t c = 0; c < out.representatives.size(); ++c) {
      if (!distinct(certs[i], certs[out.representatives[c]])) {
        out.cluster_of[i] = c;
        break;
      }
    }
    if (!out.cluster_of[i]) {
      out.cluster_of[i] = out.representatives.size();
      out.representatives.push_back(i);
    }
  }
  return out;
}

bool classify_real(const PolynomialSystem& s, const Certificate& c) {
  if (!s.has_real_coefficients())
    throw InvalidInput("classify_real: the system has non-real coefficients");
  Certificate conj = c;
  double gap2 = 0.0;
  for (auto& z : conj.x) {
    gap2 += 4.0 * z.imag() * z.imag();
    z = std::conj(z);
  }
  const double gap = std::sqrt(gap2);
  // Roots of an approximate zero are isolated in a ball of radius about
  // 0.2 / gamma; the conjugate root lies within gap + 4 beta.
  if (c.certified && c.alpha_val < 0.01 && (c.gamma_val == 0.0 || gap + 4.0 * c.beta_val < 0.15 / c.gamma_val))
    return true;
  return !distinct(c, conj);
}

}  // namespace schubert
