#include "schubert/solve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "schubert/random.hpp"

namespace schubert {

void TrackerOptions::validate() const {
  if (!(initial_step > 0.0) || !(min_step > 0.0) || min_step >= initial_step)
    throw InvalidInput("tracker: need 0 < min_step < initial_step");
  if (max_corrections < 1 || !(correction_tolerance > 0.0) || !(divergence_norm > 0.0) ||
      end_iterations < 1 || max_steps == 0 || max_paths == 0)
    throw InvalidInput("tracker: options must be positive");
}

std::string to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Converged: return "converged";
    case PathStatus::Diverged: return "diverged";
    case PathStatus::Failed: return "failed";
  }
  return "failed";
}

CVector newton_refine(const PolynomialSystem& s, std::span<const Complex> x0, int iters) {
  if (!s.square()) throw InvalidInput("newton_refine: system not square");
  if (x0.size() != static_cast<std::size_t>(s.n_vars()))
    throw ShapeError("newton_refine: point length mismatch");
  CVector x(x0.begin(), x0.end());
  CVector f;
  CMatrix jac;
  for (int it = 0; it < iters; ++it) {
    s.evaluate_with_jacobian(x, f, jac);
    const LuFactors lu = lu_decompose(jac);
    if (lu.singular)
      throw SingularJacobianError("newton_refine: singular Jacobian at iterate " + std::to_string(it), it);
    const CVector dx = lu_solve(lu, f);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
  }
  return x;
}

StartSystem::StartSystem(const PolynomialSystem& s) : g_(s.n_vars()), degrees_(s.degrees()) {
  if (!s.square()) throw InvalidInput("start system: target system not square");
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] < 1)
      throw InvalidInput("start system: polynomial " + std::to_string(i + 1) + " is constant");
    g_.add(Polynomial({{1.0, {{static_cast<int>(i), degrees_[i]}}}, {-1.0, {}}}),
           "start" + std::to_string(i + 1));
    const auto d = static_cast<std::uint64_t>(degrees_[i]);
    count_ = count_ > std::numeric_limits<std::uint64_t>::max() / d
                 ? std::numeric_limits<std::uint64_t>::max()
                 : count_ * d;
  }
}

CVector StartSystem::point(std::uint64_t path_id) const {
  CVector x(degrees_.size());
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    const auto d = static_cast<std::uint64_t>(degrees_[i]);
    const std::uint64_t digit = path_id % d;
    path_id /= d;
    x[i] = digit == 0 ? Complex(1.0)
                      : std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(digit) /
                                            static_cast<double>(d));
  }
  return x;
}

std::vector<CVector> StartSystem::points(std::uint64_t cap) const {
  if (count_ > cap) throw InvalidInput("start system has more than " + std::to_string(cap) + " points");
  std::vector<CVector> out;
  out.reserve(count_);
  for (std::uint64_t id = 0; id < count_; ++id) out.push_back(point(id));
  return out;
}

Complex homotopy_gamma(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return rng.unit_complex();
}

namespace {

// H, H_x and H_t at (x, t). The start system is diagonal, so it is
// evaluated directly.
struct Homotopy {
  const PolynomialSystem& f;
  const std::vector<int>& degrees;
  Complex gamma;

  void evaluate(std::span<const Complex> x, double t, CVector& h, CMatrix& hx, CVector* ht) {
    f.evaluate_with_jacobian(x, fx_, jx_);
    const std::size_t n = x.size();
    h.resize(n);
    hx = CMatrix(n, n);
    if (ht) ht->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int d = degrees[i];
      const Complex xd1 = std::pow(x[i], d - 1);
      const Complex g = xd1 * x[i] - 1.0;
      const Complex dg = static_cast<double>(d) * xd1;
      h[i] = (1.0 - t) * fx_[i] + t * gamma * g;
      for (std::size_t j = 0; j < n; ++j) hx(i, j) = (1.0 - t) * jx_(i, j);
      hx(i, i) += t * gamma * dg;
      if (ht) (*ht)[i] = gamma * g - fx_[i];
    }
  }

  CVector fx_;
  CMatrix jx_;
};

}  // namespace

RawSolution track_path(const PolynomialSystem& f, const StartSystem& start, Complex gamma,
                       std::span<const Complex> x0, std::uint64_t path_id,
                       const TrackerOptions& opts) {
  RawSolution out;
  out.path_id = path_id;
  Homotopy hom{f, start.degrees(), gamma, {}, {}};
  CVector x(x0.begin(), x0.end());
  const std::size_t n = x.size();
  CVector h, ht, xp;
  CMatrix hx;
  double t = 1.0;
  double step = opts.initial_step;
  int successes = 0;
  bool underflow = false;

  while (t > 0.0 && out.steps < opts.max_steps) {
    ++out.steps;
    const double dt = std::min(step, t);
    const double t1 = t - dt < 1e-14 ? 0.0 : t - dt;
    bool ok = true;

    hom.evaluate(x, t, h, hx, &ht);
    LuFactors lu = lu_decompose(hx);
    if (lu.singular) {
      ok = false;
    } else {
      const CVector v = lu_solve(lu, ht);
      xp = x;
      for (std::size_t i = 0; i < n; ++i) xp[i] += (t - t1) * v[i];
      double previous = std::numeric_limits<double>::infinity();
      bool converged = false;
      for (int c = 0; c < opts.max_corrections && ok; ++c) {
        hom.evaluate(xp, t1, h, hx, nullptr);
        lu = lu_decompose(hx);
        if (lu.singular) {
          ok = false;
          break;
        }
        const CVector dx = lu_solve(lu, h);
        for (std::size_t i = 0; i < n; ++i) xp[i] -= dx[i];
        const double size = norm2(dx);
        // Insist on contraction so the corrector cannot wander to another path.
        if (size > 0.5 * previous && c > 0) ok = false;
        previous = size;
        if (size <= opts.correction_tolerance * (1.0 + norm2(xp))) {
          converged = true;
          break;
        }
      }
      ok = ok && converged;
    }

    if (ok) {
      x = xp;
      t = t1;
      if (++successes >= 3) {
        step = std::min(2.0 * step, opts.initial_step);
        successes = 0;
      }
      if (norm2(x) > opts.divergence_norm) {
        out.status = PathStatus::Diverged;
        out.x = x;
        out.residual = norm2(f.evaluate(x));
        return out;
      }
    } else {
      successes = 0;
      step *= 0.5;
      if (step < opts.min_step) {
        underflow = true;
        break;
      }
    }
  }

  out.x = x;
  if ((underflow || t > 0.0) && t > 1e-6) {
    out.status = PathStatus::Failed;
    out.residual = norm2(f.evaluate(x));
    return out;
  }
  // Endgame: plain Newton on the target system.
  try {
    out.x = newton_refine(f, x, opts.end_iterations);
  } catch (const SingularJacobianError&) {
    out.x = x;
  }
  out.residual = norm2(f.evaluate(out.x));
  const double size = norm2(out.x);
  bool finite = std::isfinite(size) && std::isfinite(out.residual);
  if (finite && out.residual < 1e-8 * (1.0 + size)) {
    out.status = PathStatus::Converged;
  } else {
    out.status = PathStatus::Diverged;
  }
  return out;
}

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SCHUBERT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RawSolution> track_all(const PolynomialSystem& f, const TrackerOptions& opts) {
  opts.validate();
  const StartSystem start(f);
  if (start.path_count() > opts.max_paths)
    throw NumericalFailure("total-degree homotopy would need " +
                           (start.path_count() == std::numeric_limits<std::uint64_t>::max()
                                ? std::string("more than 2^64")
                                : std::to_string(start.path_count())) +
                           " paths, above the limit of " + std::to_string(opts.max_paths));
  const Complex gamma = homotopy_gamma(opts.seed);
  const std::uint64_t count = start.path_count();
  std::vector<RawSolution> results(count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t id = next++; id < count; id = next++) {
      const CVector x0 = start.point(id);
      results[id] = track_path(f, start, gamma, x0, id, opts);
    }
  };
  const std::size_t threads =
      std::min<std::uint64_t>(resolve_thread_count(opts.threads), std::max<std::uint64_t>(count, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace schubert
