#pragma once

#include "plusone/cocycle.hpp"
#include "plusone/random.hpp"
#include "plusone/symmetry.hpp"

namespace plusone {

// Random normal form: each allowed a_{m,n} (n>=4, -(n-1)<=m<=-3) and
// b_{m,n} (n>=3, -(n-1)<=m<=-2) is drawn with probability `density`.
template <class S>
Cocycle<S> random_normal(Sampler& s, int N, double density = 0.6, bool allow_complex = true) {
  BiSeries<S> a(N), b(N);
  for (int n = 3; n <= N; ++n) {
    for (int m = -(n - 1); m <= -2; ++m)
      if (s.uniform(0, 1) < density) b.add(m, n, s.scalar<S>(allow_complex));
    if (n >= 4)
      for (int m = -(n - 1); m <= -3; ++m)
        if (s.uniform(0, 1) < density) a.add(m, n, s.scalar<S>(allow_complex));
  }
  return Cocycle<S>::from_deviation(a, b);
}

template <class S>
GroupElement<S> random_element(Sampler& s, bool allow_complex = true) {
  return {s.scalar<S>(allow_complex), s.scalar<S>(allow_complex), s.scalar<S>(allow_complex), s.nonzero<S>(allow_complex)};
}

// A chart map with low-degree random coefficients; alpha(0) = 1 keeps the
// prenormal leading coefficient.
template <class S>
ChartMap<S> random_chart(Sampler& s, int N, bool unit_alpha = true) {
  ChartMap<S> P = ChartMap<S>::identity(N);
  P.alpha.c[0] = unit_alpha ? S(1) : s.nonzero<S>(false);
  P.phi.c[1] = s.nonzero<S>(false);
  for (int k = 1; k <= std::min(N, 3); ++k) {
    P.alpha.c[k] = s.scalar<S>(false);
    P.beta.c[k] = s.scalar<S>(false);
    if (k >= 2) P.phi.c[k] = s.scalar<S>(false);
  }
  return P;
}

// Example without fibration: a-part y^5/x^3, everything else zero.
template <class S>
Cocycle<S> example_no_fibration(int N) {
  BiSeries<S> a(N), b(N);
  a.add(-3, 5, S(1));
  return Cocycle<S>::from_deviation(a, b);
}

// Example with exactly one fibration: b_{-2,5} = 1, b_{-3,5} = 0, b_{-4,5} = 1.
template <class S>
Cocycle<S> example_one_fibration(int N) {
  BiSeries<S> a(N), b(N);
  b.add(-2, 5, S(1));
  b.add(-4, 5, S(1));
  return Cocycle<S>::from_deviation(a, b);
}

}  // namespace plusone
