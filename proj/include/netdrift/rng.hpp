#pragma once

#include <cstdint>
#include <random>

namespace netdrift {

// splitmix64 step; used both as a stream generator and to mix seed material.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed derivation: children of a master seed are identified by
// small integer coordinates (trial index, stage tag, ...). Independent of
// platform and of any execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = master;
  s ^= splitmix64(a);
  s = s * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL;
  s ^= splitmix64(b);
  s = s * 0x2545f4914f6cdd1dULL + 0x632be59bd9b4e019ULL;
  s ^= splitmix64(c);
  std::uint64_t out = s;
  return splitmix64(out);
}

// mt19937_64 is fully specified by the standard, so sequences are identical
// across platforms. Bounded draws below avoid std::uniform_int_distribution,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). Masked rejection keeps the draw unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> countl_zero_(n - 1);
    std::uint64_t v;
    do {
      v = engine_() & mask;
    } while (v >= n);
    return v;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  static int countl_zero_(std::uint64_t x) {
    int n = 0;
    for (std::uint64_t probe = std::uint64_t{1} << 63; probe && !(x & probe); probe >>= 1) ++n;
    return n;
  }

  std::mt19937_64 engine_;
};

}  // namespace netdrift
