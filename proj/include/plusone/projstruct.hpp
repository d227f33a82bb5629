#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plusone/closedform.hpp"
#include "plusone/series.hpp"

namespace plusone {

// y'' = A + B y' + C y'^2 + D y'^3, coefficients expanded at a basepoint
// in local coordinates (u, v) = (x - x0, y - y0), total-degree truncation.
template <class R>
struct ProjectiveStructure {
  BiSeries<R> A, B, C, D;
  std::array<R, 2> basepoint{R(0), R(0)};
  std::optional<Evaluator> evaluator;

  int order() const { return std::min({A.order(), B.order(), C.order(), D.order()}); }

  static ProjectiveStructure flat(int N, std::array<R, 2> bp = {R(0), R(0)}) {
    BiSeries<R> z(N, Trunc::Total);
    return {z, z, z, z, bp, Evaluator{"iv", {}}};
  }

  // A + B z + C z^2 + D z^3 for a slope series z
  BiSeries<R> rhs(const BiSeries<R>& z) const { return A + z * (B + z * (C + z * D)); }
};

template <class R>
struct LiouvillePair {
  BiSeries<R> L1, L2;
};

template <class R>
LiouvillePair<R> liouville(const ProjectiveStructure<R>& P) {
  const auto &A = P.A, &B = P.B, &C = P.C, &D = P.D;
  auto x = [](const BiSeries<R>& f) { return f.d_dx(); };
  auto y = [](const BiSeries<R>& f) { return f.d_dy(); };
  BiSeries<R> L1 = y(x(B)).scaled(R(2)) - x(x(C)) - y(y(A)).scaled(R(3)) - (A * x(D)).scaled(R(6)) -
                   (x(A) * D).scaled(R(3)) + y(A * C).scaled(R(3)) + B * x(C) - (B * y(B)).scaled(R(2));
  BiSeries<R> L2 = y(x(C)).scaled(R(2)) - y(y(B)) - x(x(D)).scaled(R(3)) + (y(A) * D).scaled(R(6)) +
                   (A * y(D)).scaled(R(3)) - x(B * D).scaled(R(3)) - y(B) * C + (C * x(C)).scaled(R(2));
  return {L1, L2};
}

// Coordinate changes; each returns the pulled-back structure Phi^* P in the
// new local coordinates (Phi maps new coordinates to old, fixing the origin).

// (x, y) -> (psi(x), y)
template <class R>
ProjectiveStructure<R> transform_x(const ProjectiveStructure<R>& P, const USeries<R>& psi) {
  if (!psi[0].is_zero()) fail(ErrorKind::BadInput, "psi(0) must be 0");
  if (psi[1].is_zero()) fail(ErrorKind::SingularChange, "psi'(0) = 0");
  int N = P.order();
  using B = BiSeries<R>;
  B X = B::from_useries_x(psi, N), Y = B::y(N, Trunc::Total);
  B d1 = B::from_useries_x(psi.derivative(), N), d2 = B::from_useries_x(psi.derivative().derivative(), N);
  B d1i = d1.reciprocal();
  auto pull = [&](const B& f) { return substitute(f, X, Y); };
  return {pull(P.A) * d1 * d1, pull(P.B) * d1 + d2 * d1i, pull(P.C), pull(P.D) * d1i, {R(0), R(0)}, std::nullopt};
}

// (x, y) -> (x, y + phi(x))
template <class R>
ProjectiveStructure<R> transform_shift(const ProjectiveStructure<R>& P, const USeries<R>& phi) {
  if (!phi[0].is_zero()) fail(ErrorKind::BadInput, "phi(0) must be 0");
  int N = P.order();
  using B = BiSeries<R>;
  B X = B::x(N, Trunc::Total), Y = B::y(N, Trunc::Total) + B::from_useries_x(phi, N);
  B p1 = B::from_useries_x(phi.derivative(), N), p2 = B::from_useries_x(phi.derivative().derivative(), N);
  B a = substitute(P.A, X, Y), b = substitute(P.B, X, Y), c = substitute(P.C, X, Y), d = substitute(P.D, X, Y);
  return {a + p1 * (b + p1 * (c + p1 * d)) - p2, b + (c * p1).scaled(R(2)) + (d * p1 * p1).scaled(R(3)),
          c + (d * p1).scaled(R(3)), d, {R(0), R(0)}, std::nullopt};
}

// (x, y) -> (x, a y)
template <class R>
ProjectiveStructure<R> transform_scale(const ProjectiveStructure<R>& P, const R& a) {
  if (a.is_zero()) fail(ErrorKind::SingularChange, "a = 0");
  int N = P.order();
  using B = BiSeries<R>;
  B X = B::x(N, Trunc::Total), Y = B::y(N, Trunc::Total).scaled(a);
  auto pull = [&](const B& f) { return substitute(f, X, Y); };
  return {pull(P.A).scaled(a.inv()), pull(P.B), pull(P.C).scaled(a), pull(P.D).scaled(a * a), {R(0), R(0)}, std::nullopt};
}

// (x, y) -> (a x + b y, c x + d y); f_new(x, y, z) = (a + b z)^3 f(L(x, y), (c + d z)/(a + b z)) / det
template <class R>
ProjectiveStructure<R> transform_linear(const ProjectiveStructure<R>& P, const R& a, const R& b, const R& c, const R& d) {
  R det = a * d - b * c;
  if (det.is_zero()) fail(ErrorKind::SingularChange, "linear change with zero determinant");
  int N = P.order();
  using B = BiSeries<R>;
  B u = B::x(N, Trunc::Total), v = B::y(N, Trunc::Total);
  B X = u.scaled(a) + v.scaled(b), Y = u.scaled(c) + v.scaled(d);
  std::array<B, 4> f{substitute(P.A, X, Y), substitute(P.B, X, Y), substitute(P.C, X, Y), substitute(P.D, X, Y)};
  // (a + b z)^(3-k) (c + d z)^k as coefficient lists in z
  std::array<B, 4> out{B(N, Trunc::Total), B(N, Trunc::Total), B(N, Trunc::Total), B(N, Trunc::Total)};
  for (int k = 0; k < 4; ++k) {
    std::vector<R> poly{R(1)};
    auto mul = [&](const R& p, const R& q) {
      std::vector<R> r(poly.size() + 1, R(0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        r[i] += poly[i] * p;
        r[i + 1] += poly[i] * q;
      }
      poly = r;
    };
    for (int j = 0; j < 3 - k; ++j) mul(a, b);
    for (int j = 0; j < k; ++j) mul(c, d);
    for (int e = 0; e < 4; ++e) out[e] += f[k].scaled(poly[e] / det);
  }
  return {out[0], out[1], out[2], out[3], {R(0), R(0)}, std::nullopt};
}

// Omega = (a1 b1; g1 d1) dx + (a2 b2; g2 d2) dy
template <class R>
struct AffineConnection {
  BiSeries<R> a1, b1, g1, d1, a2, b2, g2, d2;
};

template <class R>
ProjectiveStructure<R> from_connection(const AffineConnection<R>& W) {
  return {-W.g1, W.a1 - W.d1 - W.g2, W.b1 + W.a2 - W.d2, W.b2, {R(0), R(0)}, std::nullopt};
}

// f_x + f f_y - (A + B f + C f^2 + D f^3)
template <class R>
BiSeries<R> geodesic_residual(const BiSeries<R>& f, const ProjectiveStructure<R>& P) {
  return f.d_dx() + f * f.d_dy() - P.rhs(f);
}

template <class R>
struct VectorField {
  BiSeries<R> xi, eta;
};

// Coefficients of z^0..z^4 of
//   xi F_x + eta F_y + zeta F_z - zeta_x - z zeta_y - F zeta_z + (xi_x + z xi_y) F,
// zeta = eta_x + (eta_y - xi_x) z - xi_y z^2, F = A + B z + C z^2 + D z^3.
template <class R>
std::array<BiSeries<R>, 5> symmetry_residual(const VectorField<R>& V, const ProjectiveStructure<R>& P) {
  using B = BiSeries<R>;
  using ZP = std::vector<B>;  // polynomial in z with series coefficients
  int N = P.order();
  auto zero = [&] { return B(N, Trunc::Total); };
  auto add = [&](ZP& acc, const ZP& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), zero());
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
  };
  auto mul = [&](const ZP& p, const ZP& q) {
    ZP r(p.size() + q.size() - 1, zero());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
  };
  auto map = [&](const ZP& p, auto fn) {
    ZP r;
    for (auto& c : p) r.push_back(fn(c));
    return r;
  };
  auto dz = [&](const ZP& p) {
    ZP r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i].scaled(R(int(i))));
    if (r.empty()) r.push_back(zero());
    return r;
  };
  auto dx = [](const B& f) { return f.d_dx(); };
  auto dy = [](const B& f) { return f.d_dy(); };
  ZP F{P.A, P.B, P.C, P.D};
  ZP zeta{dx(V.eta), dy(V.eta) - dx(V.xi), -dy(V.xi)};
  ZP z{zero(), B::constant(R(1), N, Trunc::Total)};
  ZP res;
  add(res, mul({V.xi}, map(F, dx)));
  add(res, mul({V.eta}, map(F, dy)));
  add(res, mul(zeta, dz(F)));
  add(res, map(map(zeta, dx), [](const B& f) { return -f; }));
  add(res, map(mul(z, map(zeta, dy)), [](const B& f) { return -f; }));
  add(res, map(mul(F, dz(zeta)), [](const B& f) { return -f; }));
  add(res, mul({dx(V.xi), dy(V.xi)}, F));
  res.resize(5, zero());
  int M = N;
  for (auto& c : res) M = std::min(M, c.order());
  return {res[0].truncated(M), res[1].truncated(M), res[2].truncated(M), res[3].truncated(M), res[4].truncated(M)};
}

template <class R>
bool residual_vanishes(const BiSeries<R>& r) {
  if constexpr (R::is_exact) {
    return r.is_zero();
  } else {
    bool ok = true;
    r.for_each([&](int, int, const R& v) { ok = ok && v.magnitude() < 1e-9; });
    return ok;
  }
}

template <class R>
bool has_symmetry(const VectorField<R>& V, const ProjectiveStructure<R>& P) {
  for (auto& r : symmetry_residual(V, P))
    if (!residual_vanishes(r)) return false;
  return true;
}

namespace detail {

// e^{k x} at u = x - x0
template <class R>
BiSeries<R> exp_x(const R& k, const R& x0, int N) {
  R base(1);
  if (!x0.is_zero()) {
    if constexpr (R::is_exact) fail(ErrorKind::BadInput, "exponential models need x0 = 0 on the exact backend");
    else base = R(std::exp((k * x0).to_complex()));
  }
  USeries<R> e(N);
  R term = base;
  for (int n = 0; n <= N; ++n) {
    e.c[n] = term;
    term = term * k / R(n + 1);
  }
  return BiSeries<R>::from_useries_x(e, N);
}

// polynomial in x at u = x - x0
template <class R>
BiSeries<R> poly_x(const std::vector<R>& c, const R& x0, int N) {
  using B = BiSeries<R>;
  B X = B::x(N, Trunc::Total) + B::constant(x0, N, Trunc::Total), acc(N, Trunc::Total);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * X + B::constant(*it, N, Trunc::Total);
  return acc;
}

}  // namespace detail

template <class R>
struct CatalogEntry {
  ProjectiveStructure<R> structure;
  std::vector<VectorField<R>> symmetries;
};

// Models with symmetries. params: (i.a) A coefficients then B coefficients
// split at params[0] (the number of A coefficients); (i.b) A coefficients;
// (ii.a) alpha, beta; (ii.b) alpha; (iii), (iv), sl2 none.
template <class R>
CatalogEntry<R> catalog(const std::string& tag, const std::vector<R>& params, int N,
                        std::array<R, 2> bp = {R(0), R(0)}) {
  using B = BiSeries<R>;
  const Trunc T = Trunc::Total;
  B zero(N, T), one = B::constant(R(1), N, T);
  B X = B::x(N, T) + B::constant(bp[0], N, T), Y = B::y(N, T) + B::constant(bp[1], N, T);
  VectorField<R> dy_field{zero, one}, dx_ydy{one, Y};
  auto p = [&](std::size_t i) {
    if (i >= params.size()) fail(ErrorKind::BadInput, "model " + tag + " needs more parameters");
    return params[i];
  };
  std::vector<std::complex<double>> ev;
  for (auto& v : params) ev.push_back(v.to_complex());
  CatalogEntry<R> e;
  auto& P = e.structure;
  P.basepoint = bp;
  P.evaluator = Evaluator{tag, ev};
  if (tag == "i.a") {
    std::size_t na = std::size_t(p(0).to_complex().real() + 0.5);
    std::vector<R> a(params.begin() + 1, params.begin() + 1 + std::min(na, params.size() - 1));
    std::vector<R> b(params.begin() + 1 + a.size(), params.end());
    P.A = detail::poly_x(a, bp[0], N);
    P.B = detail::poly_x(b, bp[0], N);
    P.C = zero;
    P.D = one;
    e.symmetries = {dy_field};
  } else if (tag == "i.b") {
    P.A = detail::poly_x(params, bp[0], N);
    P.B = zero;
    P.C = detail::exp_x(R(1), bp[0], N);
    P.D = zero;
    e.symmetries = {dy_field};
  } else if (tag == "ii.a") {
    P.A = detail::exp_x(R(1), bp[0], N).scaled(p(0));
    P.B = B::constant(p(1), N, T);
    P.C = zero;
    P.D = detail::exp_x(R(-2), bp[0], N);
    e.symmetries = {dy_field, dx_ydy};
  } else if (tag == "ii.b") {
    P.A = detail::exp_x(R(1), bp[0], N).scaled(p(0));
    P.B = zero;
    P.C = detail::exp_x(R(-1), bp[0], N);
    P.D = zero;
    e.symmetries = {dy_field, dx_ydy};
  } else if (tag == "iii") {
    P.A = zero;
    P.B = B::constant(R::rational(1, 2), N, T);
    P.C = zero;
    P.D = detail::exp_x(R(-2), bp[0], N);
    e.symmetries = {dy_field, dx_ydy, {Y, (Y * Y).scaled(R::rational(1, 2))}};
  } else if (tag == "iv") {
    P.A = P.B = P.C = P.D = zero;
    e.symmetries = {{one, zero}, {zero, one}, {X, zero}, {Y, zero}, {zero, X}, {zero, Y}, {X * X, X * Y}, {X * Y, Y * Y}};
  } else if (tag == "sl2") {
    // y'' = (x y' - y)^3
    P.A = -(Y * Y * Y);
    P.B = (X * Y * Y).scaled(R(3));
    P.C = -(X * X * Y).scaled(R(3));
    P.D = X * X * X;
    e.symmetries = {{zero, X}, {X.scaled(R::rational(-1, 2)), Y.scaled(R::rational(1, 2))}, {Y.scaled(R::rational(-1, 2)), zero}};
  } else if (tag == "pencil_exy") {
    // geodesics include dx + t e^{xy} dy = 0
    P.A = zero;
    P.B = -Y;
    P.C = -X;
    P.D = zero;
  } else {
    fail(ErrorKind::UnknownTag, "unknown model tag '" + tag + "'");
  }
  return e;
}

// Taylor cross-check of the attached evaluator at a few points near the basepoint.
template <class R>
double evaluator_mismatch(const ProjectiveStructure<R>& P, double radius = 0.05) {
  if (!P.evaluator) return 0;
  std::complex<double> x0 = P.basepoint[0].to_complex(), y0 = P.basepoint[1].to_complex();
  double worst = 0;
  const std::array<std::pair<double, double>, 4> offs{{{1, 0}, {0, 1}, {-0.6, 0.8}, {0.7, -0.7}}};
  for (auto [du, dv] : offs) {
    std::complex<double> u = radius * du, v = radius * dv;
    auto cf = evaluate(*P.evaluator, x0 + u, y0 + v);
    const BiSeries<R>* s[4] = {&P.A, &P.B, &P.C, &P.D};
    for (int k = 0; k < 4; ++k) {
      std::complex<double> acc = 0;
      s[k]->for_each([&](int m, int n, const R& c) { acc += c.to_complex() * std::pow(u, m) * std::pow(v, n); });
      worst = std::max(worst, std::abs(acc - cf[k]));
    }
  }
  return worst;
}

}  // namespace plusone
