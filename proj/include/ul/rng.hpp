#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ul {

/// Seeded generator with platform-independent variates.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so uniform and normal draws are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }

  double normal();
  std::complex<double> complex_normal();

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  double phase() { return 2.0 * kPi * uniform(); }

  static constexpr double kPi = 3.141592653589793238462643383279502884;

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a stream index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ul
