#pragma once

#include <string>
#include <tuple>

#include "plusone/series.hpp"

namespace plusone {

// Psi(x, y) = (alpha(y) x + beta(y), phi(y))
template <class R>
struct ChartMap {
  USeries<R> alpha, beta, phi;

  static ChartMap identity(int N) {
    return {USeries<R>::constant(R(1), N), USeries<R>(N), USeries<R>::identity(N)};
  }
  int order() const { return std::min({alpha.order(), beta.order(), phi.order()}); }

  void check() const {
    if (alpha[0].is_zero() || !beta[0].is_zero() || !phi[0].is_zero() || phi[1].is_zero())
      fail(ErrorKind::BadInput, "chart map needs alpha(0)!=0, beta(0)=0, phi(0)=0, phi'(0)!=0");
  }
};

template <class R>
ChartMap<R> chart_inverse(const ChartMap<R>& P) {
  P.check();
  USeries<R> pinv = revert(P.phi);
  USeries<R> a = compose_u(P.alpha, pinv).inv();
  USeries<R> b = compose_u(P.beta, pinv) * a;
  return {a, -b, pinv};
}

// A o B
template <class R>
ChartMap<R> chart_compose(const ChartMap<R>& A, const ChartMap<R>& B) {
  USeries<R> aB = compose_u(A.alpha, B.phi);
  return {aB * B.alpha, aB * B.beta + compose_u(A.beta, B.phi), compose_u(A.phi, B.phi)};
}

template <class R>
struct Cocycle {
  BiSeries<R> first, second;

  int order() const { return std::min(first.order(), second.order()); }

  static Cocycle linear(int N) { return {BiSeries<R>::monomial(R(1), -1, 0, N), BiSeries<R>::monomial(R(1), -1, 1, N)}; }
  static Cocycle from_deviation(const BiSeries<R>& a, const BiSeries<R>& b) {
    int N = std::min(a.order(), b.order());
    Cocycle L = linear(N);
    return {L.first + a, L.second + b};
  }
  BiSeries<R> a_part() const { return first - BiSeries<R>::monomial(R(1), -1, 0, order()); }
  BiSeries<R> b_part() const { return second - BiSeries<R>::monomial(R(1), -1, 1, order()); }
  R a(int m, int n) const { return a_part().coeff(m, n); }
  R b(int m, int n) const { return b_part().coeff(m, n); }

  bool is_prenormal() const {
    return first.supported_in(-1, 0) && first.coeff(-1, 0) == R(1) && second.supported_in(-1, 1);
  }
  bool is_normal() const { return a_part().supported_in(-3, 4) && b_part().supported_in(-2, 3); }

  Cocycle truncated(int N) const { return {first.truncated(N), second.truncated(N)}; }
  friend bool operator==(const Cocycle& p, const Cocycle& q) { return p.first == q.first && p.second == q.second; }
  friend bool operator!=(const Cocycle& p, const Cocycle& q) { return !(p == q); }

  template <class T>
  Cocycle<T> map(const std::function<T(const R&)>& fn) const {
    return {first.template map<T>(fn), second.template map<T>(fn)};
  }
};

// Psi o (F, G)
template <class R>
std::pair<BiSeries<R>, BiSeries<R>> apply_chart(const ChartMap<R>& P, const BiSeries<R>& F, const BiSeries<R>& G) {
  BiSeries<R> x = compose_u(P.alpha, G) * F + compose_u(P.beta, G);
  return {x.truncated(F.order()), compose_u(P.phi, G).truncated(F.order())};
}

// (F, G) o Psi
template <class R>
Cocycle<R> precompose(const Cocycle<R>& Phi, const ChartMap<R>& P) {
  int N = Phi.order();
  BiSeries<R> X = BiSeries<R>::from_useries(P.alpha, N) * BiSeries<R>::x(N) + BiSeries<R>::from_useries(P.beta, N);
  BiSeries<R> Y = BiSeries<R>::from_useries(P.phi, N);
  return {substitute(Phi.first, X, Y), substitute(Phi.second, X, Y)};
}

// Psi_inf o Phi o Psi_0^{-1}
template <class R>
Cocycle<R> conjugate(const ChartMap<R>& Pinf, const Cocycle<R>& Phi, const ChartMap<R>& P0) {
  Cocycle<R> mid = precompose(Phi, chart_inverse(P0));
  auto [f, s] = apply_chart(Pinf, mid.first, mid.second);
  return {f, s};
}

template <class R>
struct NormalizeResult {
  Cocycle<R> normal;
  ChartMap<R> psi0, psi_inf;
  int passes = 0;  // extraction rounds used
};

namespace detail {

// coefficients c_n of a row pattern (m = shift - n, n) as a series in one variable
template <class R>
USeries<R> diagonal(const BiSeries<R>& F, int shift, int N) {
  USeries<R> u(N);
  for (int n = 0; n <= std::min(N, F.order()); ++n) u.c[n] = F.coeff(shift - n, n);
  return u;
}

template <class R>
USeries<R> column(const BiSeries<R>& F, int m, int N) {
  USeries<R> u(N);
  for (int n = 0; n <= std::min(N, F.order()); ++n) u.c[n] = F.coeff(m, n);
  return u;
}

}  // namespace detail

// Right half of the reduction: kill the x^-1 and x^-2 columns of the first
// component beyond 1/x and the x^-1 column of the second beyond y/x.
template <class R>
ChartMap<R> right_chart(const Cocycle<R>& Phi) {
  int N = Phi.order();
  USeries<R> f = detail::column(Phi.first, -1, N);
  USeries<R> g = detail::column(Phi.first, -2, N);
  USeries<R> h = detail::column(Phi.second, -1, N);
  if (h[1].is_zero()) fail(ErrorKind::DegenerateExtraction, "h'(0) = 0");
  USeries<R> fi = f.inv();
  return {fi, -(g * fi * fi), h * fi};
}

// Left half: chart N with Phi' = N o Phi; N is the inverse of
// (x, y) -> (f(y) x + g(y) - f'(y) k(y) / h'(y), h(y)).
template <class R>
ChartMap<R> left_chart(const Cocycle<R>& Phi) {
  int N = Phi.order();
  USeries<R> f = detail::diagonal(Phi.first, -1, N);
  USeries<R> g = detail::diagonal(Phi.first, 0, N);
  USeries<R> h = detail::diagonal(Phi.second, 0, N);
  USeries<R> k = detail::diagonal(Phi.second, 1, N);
  if (h[1].is_zero()) fail(ErrorKind::DegenerateExtraction, "h'(0) = 0");
  USeries<R> hp = h.derivative();
  USeries<R> corr = (f.derivative() * k * hp.inv()).truncated(N);
  ChartMap<R> M{f, g - corr, h};
  return chart_inverse(M);
}

// Reduce a prenormal cocycle to normal form. The extraction pair is applied
// repeatedly until the supports are normal; the conjugation identity is
// re-checked on the accumulated charts before returning.
template <class R>
NormalizeResult<R> reduce_to_normal(const Cocycle<R>& Phi) {
  if (!Phi.is_prenormal()) fail(ErrorKind::NotPrenormal, "input cocycle is not prenormal");
  int N = Phi.order();
  ChartMap<R> P0 = ChartMap<R>::identity(N), Pinf = ChartMap<R>::identity(N);
  Cocycle<R> cur = Phi;
  int pass = 0;
  for (; pass <= N && !cur.is_normal(); ++pass) {
    ChartMap<R> r = right_chart(cur);
    cur = precompose(cur, chart_inverse(r));
    P0 = chart_compose(r, P0);
    ChartMap<R> l = left_chart(cur);
    auto [f, s] = apply_chart(l, cur.first, cur.second);
    cur = {f, s};
    Pinf = chart_compose(l, Pinf);
  }
  if (!cur.is_normal()) fail(ErrorKind::NormalityBroken, "reduction did not reach the normal support");
  if (conjugate(Pinf, Phi, P0) != cur) fail(ErrorKind::NormalityBroken, "conjugation identity failed after reduction");
  return {cur, P0, Pinf, pass};
}

// Fixtures

template <class R>
Cocycle<R> special_covering(int N) {
  // (1/x, (y/x)(1 - y^2/x)^{-1/2})
  using B = BiSeries<R>;
  B u = B::constant(R(1), N) - B::monomial(R(1), -1, 2, N);
  return {B::monomial(R(1), -1, 0, N), B::monomial(R(1), -1, 1, N) * u.pow_rational(-1, 2)};
}

// (1/x (1 + 2c y^2/x)/(1 + c y^2/x)^2, (y/x)/(1 + c y^2/x))
template <class R>
Cocycle<R> c_family(const R& c, int N) {
  using B = BiSeries<R>;
  B w = B::monomial(c, -1, 2, N);
  B one = B::constant(R(1), N);
  B d = (one + w).reciprocal();
  return {B::monomial(R(1), -1, 0, N) * (one + w.scaled(R(2))) * d * d, B::monomial(R(1), -1, 1, N) * d};
}

}  // namespace plusone
