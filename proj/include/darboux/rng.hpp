#pragma once

#include <cmath>
#include <cstdint>

namespace darboux {

/// SplitMix64: the stream-splitting workhorse. Every consumer derives its own
/// stream from (seed, labels...) so results do not depend on evaluation order
/// or thread count.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// uniform in (0, 1]; never zero, so it is safe under log().
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
};

inline std::uint64_t mix_labels(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 s(seed);
  std::uint64_t h = s.next();
  s.state = h ^ (a * 0xd6e8feb86659fd93ULL);
  h = s.next();
  s.state = h ^ (b * 0xa2f1c6f895d4b191ULL);
  return s.next();
}

/// Box-Muller pair of independent standard normals.
inline void normal_pair(SplitMix64& gen, double& n1, double& n2) {
  const double u1 = gen.next_unit();
  const double u2 = gen.next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  n1 = r * std::cos(6.283185307179586476925286766559 * u2);
  n2 = r * std::sin(6.283185307179586476925286766559 * u2);
}

}  // namespace darboux
