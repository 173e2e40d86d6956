#pragma once

#include "geo3ap/rational.hpp"

#include <cstdint>

namespace geo3ap {

// splitmix64; self-contained so generated streams are identical on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps the distribution exactly uniform
    const std::uint64_t limit = n * ((~0ULL) / n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // inclusive range
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  // numerator in [-max_num, max_num], denominator 2^j with j in [0, den_pow2].
  Rational rational(long max_num, int den_pow2) {
    const long num = range(-max_num, max_num);
    const long shift = range(0, den_pow2);
    return make_rational(Integer(num), pow_integer(Integer(2), static_cast<unsigned long>(shift)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace geo3ap
