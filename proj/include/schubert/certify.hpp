#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "schubert/polysys.hpp"

namespace schubert {

// (13 - 3 sqrt(17)) / 4
inline constexpr double kAlpha0 = 0.15767078078675454;

struct AlphaBetaGamma {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // Df(x) could not be inverted; the three values are +inf.
  bool singular = false;
};

struct Certificate {
  CVector x;
  double beta_val = 0.0;
  double gamma_val = 0.0;
  double alpha_val = 0.0;
  bool certified = false;
  std::uint64_t system_fingerprint = 0;
};

// beta = |Df(x)^-1 f(x)| with f accumulated in long double; gamma is the
// largest (|Df^-1 D^m f / m!|_F)^(1/(m-1)) over m = 2..deg, the Frobenius
// norm of the unfolding bounding the m-linear operator norm.
// Throws InvalidInput for a non-square system or a point of the wrong length.
AlphaBetaGamma alpha_beta_gamma(const PolynomialSystem& s, std::span<const Complex> x);

// Throws InvalidInput("system not square: ...") for non-square systems.
Certificate certify(const PolynomialSystem& s, std::span<const Complex> x);

// |x1 - x2| > 2 (beta1 + beta2). Throws InvalidInput when the certificates
// belong to different systems.
bool distinct(const Certificate& a, const Certificate& b);

// Greedy clustering: a certified point joins the first representative it is
// not certified-distinct from. Uncertified points get no cluster.
struct Clustering {
  std::vector<std::optional<std::size_t>> cluster_of;
  std::vector<std::size_t> representatives;  // index of each cluster's first member
  std::size_t count() const { return representatives.size(); }
};
Clustering deduplicate(std::span<const Certificate> certs);

// For a certified point of a real-coefficient system: real when the point is
// within Smale's uniqueness radius of its conjugate, otherwise real iff x
// and conj(x) are not certified-distinct. Throws InvalidInput when the
// system has non-real coefficients.
bool classify_real(const PolynomialSystem& s, const Certificate& c);

}  // namespace schubert
