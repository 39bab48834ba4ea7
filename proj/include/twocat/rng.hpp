#pragma once

#include <cstdint>
#include <random>

namespace twocat {

// Deterministic RNG wrapper.  mt19937_64 output is pinned by the standard,
// but the std distributions are not, so sampling is done by hand here to keep
// runs with the same seed byte-for-byte reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, n), n > 0, via rejection to avoid modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool flip() { return (eng_() & 1u) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace twocat
