#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace schubert {

// Seeded generator used for every random quantity in the library.
//
// The bit stream is std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Doubles are formed from the top 53 bits of one draw
// ((u >> 11) * 2^-53), so results do not depend on the standard library's
// distribution implementations. Instances are passed by reference; there is
// no global generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

  // Real and imaginary parts independently uniform on [-1, 1).
  std::complex<double> complex_square() {
    const double re = uniform_symmetric();
    const double im = uniform_symmetric();
    return {re, im};
  }

  // Uniformly distributed point on the unit circle.
  std::complex<double> unit_complex() {
    const double angle = 2.0 * 3.14159265358979323846 * uniform01();
    return std::polar(1.0, angle);
  }

  // Uniform integer in [lo, hi]. Modulo bias is negligible for the small
  // ranges used here.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace schubert
