#ifndef RISISAC_RNG_HPP
#define RISISAC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace risisac {

/// Deterministic 64-bit generator built on SplitMix64 (Steele, Lea, Flood 2014).
///
/// The algorithm is pinned so the whole pipeline is reproducible from a seed
/// and reimplementable in another language:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Uniform doubles map the top 53 bits to (0, 1]. Gaussians use Box-Muller on
/// consecutive uniforms (no caching, two draws per normal pair).
///
/// Independent named streams are derived by folding an FNV-1a hash of the
/// stream tag into the seed and running one SplitMix64 scramble, so each
/// channel/link consumes its own stream regardless of generation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t fnv1a(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ull;
    }
    return h;
  }

  /// Child generator for the named stream, decorrelated from the parent seed.
  static Rng stream(std::uint64_t seed, std::string_view tag) {
    Rng r(seed ^ fnv1a(tag));
    return Rng(r.next_u64());
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1]; never returns 0 so log() below is safe.
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Circularly symmetric complex Gaussian CN(0, 1).
  std::complex<double> next_cgaussian() {
    double u1 = next_double();
    double u2 = next_double();
    double r = std::sqrt(-std::log(u1));  // |z| with E|z|^2 = 1
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace risisac

#endif
