#ifndef CDLAB_RNG_HPP
#define CDLAB_RNG_HPP

#include <cstdint>

#include "cdlab/trig_polynomial.hpp"

namespace cdlab {

/// SplitMix64 (Steele, Lea, Flood 2014). Portable and fully specified, so any
/// implementation reproduces the same stream from the same seed:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
/// uniform01 uses the top 53 bits.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)); }

 private:
  std::uint64_t state_;
};

/// Trig polynomial with every coefficient (constant term and harmonics
/// 1..degree) uniform in [-1, 1].
inline TrigPolynomial random_trig_polynomial(SplitMix64& rng, std::size_t degree) {
  const double a0 = rng.uniform(-1.0, 1.0);
  std::vector<double> c(degree), s(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    c[k] = rng.uniform(-1.0, 1.0);
    s[k] = rng.uniform(-1.0, 1.0);
  }
  return {a0, std::move(c), std::move(s)};
}

inline MapTriple random_map_triple(SplitMix64& rng, std::size_t degree) {
  MapTriple m;
  for (auto& f : m.components) f = random_trig_polynomial(rng, degree);
  return m;
}

}  // namespace cdlab

#endif  // CDLAB_RNG_HPP
