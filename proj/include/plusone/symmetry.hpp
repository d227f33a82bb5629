#pragma once

#include <array>
#include <map>
#include <optional>

#include "plusone/cocycle.hpp"

namespace plusone {

template <class S>
struct GroupElement {
  S alpha{0}, beta{0}, gamma{0}, theta{1};

  static GroupElement identity() { return {S(0), S(0), S(0), S(1)}; }
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.theta == b.theta;
  }
  std::array<std::array<S, 4>, 4> matrix() const {
    return {{{S(1), alpha, beta, gamma}, {S(0), theta, S(0), S(0)}, {S(0), S(0), theta, S(0)}, {S(0), S(0), S(0), theta * theta}}};
  }
  std::string str() const {
    return "(" + alpha.str() + ", " + beta.str() + ", " + gamma.str() + ", " + theta.str() + ")";
  }
};

// t1.(t2.Phi) = t3.Phi
template <class S>
GroupElement<S> group_law(const GroupElement<S>& t1, const GroupElement<S>& t2) {
  return {t2.alpha + t2.theta * t1.alpha, t2.beta + t2.theta * t1.beta, t2.gamma + t2.theta * t2.theta * t1.gamma,
          t1.theta * t2.theta};
}

template <class S>
GroupElement<S> group_inverse(const GroupElement<S>& t) {
  // solve group_law(u, t) = id
  S ti = t.theta.inv();
  return {-(t.alpha * ti), -(t.beta * ti), -(t.gamma * ti * ti), ti};
}

namespace detail {

template <class R>
USeries<R> k_zero(const Cocycle<R>& Phi) {
  int N = Phi.order();
  BiSeries<R> b = Phi.b_part();
  USeries<R> k(N);
  for (int n = 3; n <= N; ++n) k.c[n] = b.coeff(-2, n);
  return k;
}

template <class R>
USeries<R> k_inf(const Cocycle<R>& Phi) {
  int N = Phi.order();
  BiSeries<R> b = Phi.b_part();
  USeries<R> k(N);
  for (int n = 3; n <= N; ++n) k.c[n] = b.coeff(-n + 1, n);
  return k;
}

// 1 + c y
template <class R>
USeries<R> affine(const R& c, int N) {
  USeries<R> u = USeries<R>::constant(R(1), N);
  if (N >= 1) u.c[1] = c;
  return u;
}

}  // namespace detail

// Normalizing pair (Psi_inf, Psi_0) attached to theta = (a, b, g, t) and Phi:
//   Psi_inf = ((x + a y)/(1 + b y) + g (y/(1+b y))^2 + b kinf(y)/(1+b y)^2, t y/(1+b y))
//   Psi_0   = ((x + b y)/(1 + a y) - g (y/(1+a y))^2 - a k0(y)/(1+a y)^2,  t y/(1+a y))
template <class R>
std::pair<ChartMap<R>, ChartMap<R>> freedom_pair(const R& a, const R& b, const R& g, const R& t, const Cocycle<R>& Phi) {
  int N = Phi.order();
  USeries<R> y = USeries<R>::identity(N);
  USeries<R> ia = detail::affine(a, N).inv(), ib = detail::affine(b, N).inv();
  USeries<R> k0 = detail::k_zero(Phi), ki = detail::k_inf(Phi);
  ChartMap<R> pinf{ib, y.scaled(a) * ib + (y * ib * y * ib).scaled(g) + ki.scaled(b) * ib * ib, (y * ib).scaled(t)};
  ChartMap<R> p0{ia, y.scaled(b) * ia - (y * ia * y * ia).scaled(g) - k0.scaled(a) * ia * ia, (y * ia).scaled(t)};
  return {pinf, p0};
}

template <class R>
Cocycle<R> scale_theta(const Cocycle<R>& Phi, const R& t) {
  // (x, t y) on both sides
  R ti = t.inv();
  BiSeries<R> a = Phi.a_part(), b = Phi.b_part();
  BiSeries<R> a2(a.order()), b2(b.order());
  a.for_each([&](int m, int n, const R& v) { a2.add(m, n, v * power(ti, n)); });
  b.for_each([&](int m, int n, const R& v) { b2.add(m, n, v * power(ti, n - 1)); });
  return Cocycle<R>::from_deviation(a2, b2);
}

// One-parameter pieces of the action, each through its normalizing pair.
template <class R>
Cocycle<R> act_gamma(const R& g, const Cocycle<R>& Phi) {
  if (g.is_zero()) return Phi;
  auto [pi, p0] = freedom_pair(R(0), R(0), g, R(1), Phi);
  return conjugate(pi, Phi, p0);
}
template <class R>
Cocycle<R> act_beta(const R& b, const Cocycle<R>& Phi) {
  if (b.is_zero()) return Phi;
  auto [pi, p0] = freedom_pair(R(0), b, R(0), R(1), Phi);
  return conjugate(pi, Phi, p0);
}
template <class R>
Cocycle<R> act_alpha(const R& a, const Cocycle<R>& Phi) {
  if (a.is_zero()) return Phi;
  auto [pi, p0] = freedom_pair(a, R(0), R(0), R(1), Phi);
  return conjugate(pi, Phi, p0);
}

// theta.Phi through the decomposition (0,0,0,t).(a,0,0,1).(0,b,0,1).(0,0,g,1).
template <class R>
Cocycle<R> act_generic(const R& a, const R& b, const R& g, const R& t, const Cocycle<R>& Phi) {
  if (!Phi.is_normal()) fail(ErrorKind::NotNormal, "act needs a normal form");
  Cocycle<R> c = act_gamma(g, Phi);
  c = act_beta(b, c);
  c = act_alpha(a, c);
  if (t != R(1)) c = scale_theta(c, t);
  if (!c.is_normal()) fail(ErrorKind::NormalityBroken, "conjugate left the normal support");
  return c;
}

template <class S>
Cocycle<S> act(const GroupElement<S>& th, const Cocycle<S>& Phi) {
  if (th.theta.is_zero()) fail(ErrorKind::BadInput, "theta must be nonzero");
  return act_generic(th.alpha, th.beta, th.gamma, th.theta, Phi);
}

// The closed-form pair applied in one conjugation.
template <class S>
Cocycle<S> act_single_pair(const GroupElement<S>& th, const Cocycle<S>& Phi) {
  auto [pi, p0] = freedom_pair(th.alpha, th.beta, th.gamma, th.theta, Phi);
  return conjugate(pi, Phi, p0);
}

// Deviation coefficients of (a, b, g, 1).Phi as polynomials in (a, b, g).
template <class S>
struct ActTable {
  BiSeries<MPoly<S>> a, b;
};

template <class S>
ActTable<S> act_polynomial(const Cocycle<S>& Phi) {
  using P = MPoly<S>;
  Cocycle<P> lifted = Phi.template map<P>([](const S& v) { return P(v); });
  Cocycle<P> out = act_generic(P::var(0), P::var(1), P::var(2), P(1), lifted);
  return {out.a_part(), out.b_part()};
}

}  // namespace plusone
