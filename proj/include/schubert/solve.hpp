#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "schubert/errors.hpp"
#include "schubert/polysys.hpp"

namespace schubert {

struct TrackerOptions {
  double initial_step = 0.05;
  double min_step = 1e-7;
  int max_corrections = 3;
  double correction_tolerance = 1e-10;
  double divergence_norm = 1e8;
  int end_iterations = 5;
  std::uint64_t seed = 0;  // draws the gamma constant
  std::size_t max_steps = 50000;
  // Refuse start systems with more paths than this.
  std::uint64_t max_paths = std::uint64_t{1} << 20;
  // 0 = SCHUBERT_THREADS, else the available parallelism.
  std::size_t threads = 0;

  // Throws InvalidInput unless every field is positive and
  // min_step < initial_step.
  void validate() const;
};

enum class PathStatus { Converged, Diverged, Failed };
std::string to_string(PathStatus s);

struct RawSolution {
  CVector x;
  PathStatus status = PathStatus::Failed;
  std::uint64_t path_id = 0;
  double residual = 0.0;  // |f(x)| at the endpoint
  std::size_t steps = 0;
};

class SingularJacobianError : public NumericalFailure {
 public:
  SingularJacobianError(const std::string& what, int iterate)
      : NumericalFailure(what), iterate_(iterate) {}
  int iterate() const noexcept { return iterate_; }

 private:
  int iterate_;
};

// x <- x - Df(x)^-1 f(x), `iters` times. Throws InvalidInput for non-square
// systems and SingularJacobianError naming the 0-based iterate at which the
// Jacobian was singular.
CVector newton_refine(const PolynomialSystem& s, std::span<const Complex> x0, int iters);

// g_i = x_i^{d_i} - 1 with the degrees of s. Start point `path_id` takes
// root-of-unity exponents from the mixed-radix digits of path_id, the first
// variable varying fastest.
class StartSystem {
 public:
  // Throws InvalidInput when s is not square or has a constant polynomial.
  explicit StartSystem(const PolynomialSystem& s);

  const PolynomialSystem& system() const { return g_; }
  const std::vector<int>& degrees() const { return degrees_; }
  // Product of the degrees, saturating at UINT64_MAX.
  std::uint64_t path_count() const { return count_; }
  CVector point(std::uint64_t path_id) const;
  // Every start point; throws InvalidInput beyond `cap` points.
  std::vector<CVector> points(std::uint64_t cap = std::uint64_t{1} << 20) const;

 private:
  PolynomialSystem g_;
  std::vector<int> degrees_;
  std::uint64_t count_ = 1;
};

// The seeded unit complex constant of the homotopy.
Complex homotopy_gamma(std::uint64_t seed);

// Tracks H(x,t) = (1-t) f + t gamma g from t=1 to t=0 starting at x0.
RawSolution track_path(const PolynomialSystem& f, const StartSystem& start, Complex gamma,
                       std::span<const Complex> x0, std::uint64_t path_id,
                       const TrackerOptions& opts);

// All paths, ordered by path_id. Paths run concurrently on
// opts.threads workers; results do not depend on the thread count.
// Throws NumericalFailure when the path count exceeds opts.max_paths.
std::vector<RawSolution> track_all(const PolynomialSystem& f, const TrackerOptions& opts);

// Worker count from opts.threads, SCHUBERT_THREADS, or the hardware.
std::size_t resolve_thread_count(std::size_t requested);

}  // namespace schubert
