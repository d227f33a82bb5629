#pragma once

#include <random>

#include "plusone/scalar.hpp"

namespace plusone {

// Small random scalars for property checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // p/q with |p| <= 5, 1 <= q <= 4; a Gaussian part with probability 1/3
  template <class S>
  S scalar(bool allow_complex = true) {
    S re = S::rational(integer(-5, 5), integer(1, 4));
    if (allow_complex && integer(0, 2) == 0) return re + S::rational(integer(-3, 3), integer(1, 3)) * S::i();
    return re;
  }
  template <class S>
  S nonzero(bool allow_complex = true) {
    for (;;) {
      S s = scalar<S>(allow_complex);
      if (!s.is_zero()) return s;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace plusone
