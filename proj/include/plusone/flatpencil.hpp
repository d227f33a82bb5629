#pragma once

#include <optional>

#include "plusone/projstruct.hpp"

namespace plusone {

// omega_t = omega0 + t omegaInf, omega0 = P dx + Q dy, omegaInf = R dx + S dy
template <class K>
struct Pencil {
  BiSeries<K> P, Q, R, S;
  std::array<K, 2> basepoint{K(0), K(0)};

  int order() const { return std::min({P.order(), Q.order(), R.order(), S.order()}); }
};

// Parameter of a member: t, or nullopt for t = infinity.
template <class K>
using Param = std::optional<K>;

namespace detail {

template <class K>
std::pair<BiSeries<K>, BiSeries<K>> member(const Pencil<K>& pen, const Param<K>& t) {
  if (!t) return {pen.R, pen.S};
  return {pen.P + pen.R.scaled(*t), pen.Q + pen.S.scaled(*t)};
}

// (c0, cinf) with omega_t = c0 omega0 + cinf omegaInf
template <class K>
std::pair<K, K> member_coords(const Param<K>& t) {
  if (!t) return {K(0), K(1)};
  return {K(1), *t};
}

template <class K>
bool is_zero_at_base(const K& v) {
  if constexpr (K::is_exact) return v.is_zero();
  else return v.magnitude() < 1e-12;
}

}  // namespace detail

// exp of a series without constant term
template <class K>
BiSeries<K> series_exp(const BiSeries<K>& arg) {
  if (!arg.coeff(0, 0).is_zero()) fail(ErrorKind::NonzeroConstantTerm, "series_exp needs arg(0) = 0");
  int N = arg.order();
  BiSeries<K> out = BiSeries<K>::constant(K(1), N, arg.mode()), term = out;
  for (int k = 1; k <= N; ++k) {
    term = (term * arg).scaled(K(k).inv()).truncated(N);
    out += term;
  }
  return out;
}

// dy = e dx for the member t
template <class K>
BiSeries<K> slope(const Pencil<K>& pen, const Param<K>& t) {
  auto [a, b] = detail::member(pen, t);
  if (detail::is_zero_at_base(b.coeff(0, 0))) fail(ErrorKind::VerticalAtBase, "member is vertical at the basepoint");
  return -(a * b.reciprocal());
}

// Parameter t of the member through slope e: -(P + e Q)/(R + e S)
template <class K>
BiSeries<K> parameter_of_slope(const Pencil<K>& pen, const BiSeries<K>& e) {
  return -((pen.P + e * pen.Q) * (pen.R + e * pen.S).reciprocal());
}

// f_x + f f_y evaluated on a slope field
template <class K>
BiSeries<K> slope_acceleration(const BiSeries<K>& e) {
  return e.d_dx() + e * e.d_dy();
}

// The projective structure whose geodesics contain every member: cubic in
// the slope through four members (Lagrange form).
template <class K>
ProjectiveStructure<K> structure_from_pencil(const Pencil<K>& pen) {
  using B = BiSeries<K>;
  if (detail::is_zero_at_base((pen.P * pen.S - pen.Q * pen.R).coeff(0, 0)))
    fail(ErrorKind::DegeneratePencil, "omega0 and omegaInf are dependent at the basepoint");
  std::vector<B> es;
  std::vector<K> base;
  const long tries[] = {0, 1, -1, 2, -2, 3, -3, 4, 5, 7};
  for (long t : tries) {
    if (es.size() == 4) break;
    auto [a, b] = detail::member(pen, Param<K>(K(t)));
    if (detail::is_zero_at_base(b.coeff(0, 0))) continue;
    B e = slope(pen, Param<K>(K(t)));
    bool distinct = true;
    for (auto& v : base) distinct = distinct && !detail::is_zero_at_base(v - e.coeff(0, 0));
    if (!distinct) continue;
    base.push_back(e.coeff(0, 0));
    es.push_back(e);
  }
  if (es.size() < 4) fail(ErrorKind::DegeneratePencil, "fewer than four members with distinct slopes");
  int N = pen.order();
  std::array<B, 4> coef{B(N, Trunc::Total), B(N, Trunc::Total), B(N, Trunc::Total), B(N, Trunc::Total)};
  for (int k = 0; k < 4; ++k) {
    // prod_{j != k} (z - e_j) / (e_k - e_j)
    std::vector<B> poly{B::constant(K(1), N, Trunc::Total)};
    B den = B::constant(K(1), N, Trunc::Total);
    for (int j = 0; j < 4; ++j) {
      if (j == k) continue;
      std::vector<B> next(poly.size() + 1, B(N, Trunc::Total));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] -= poly[i] * es[j];
        next[i + 1] += poly[i];
      }
      poly = next;
      den = den * (es[k] - es[j]);
    }
    B w = slope_acceleration(es[k]) * den.reciprocal();
    for (int i = 0; i < 4; ++i) coef[i] += poly[i] * w;
  }
  int M = N;
  for (auto& c : coef) M = std::min(M, c.order());
  return {coef[0].truncated(M), coef[1].truncated(M), coef[2].truncated(M), coef[3].truncated(M), pen.basepoint,
          std::nullopt};
}

// omega = dz + (g0 + g1 z + g2 z^2) dx + (h0 + h1 z + h2 z^2) dy
template <class K>
struct RiccatiForm {
  BiSeries<K> g0, g1, g2, h0, h1, h2;
};

// z^0, z^1, z^2 coefficients of omega ^ d omega (in dz^dx^dy):
//   h_x - g_y - g h_z + h g_z
template <class K>
std::array<BiSeries<K>, 3> riccati_residual(const RiccatiForm<K>& w) {
  auto dx = [](const BiSeries<K>& f) { return f.d_dx(); };
  auto dy = [](const BiSeries<K>& f) { return f.d_dy(); };
  return {dx(w.h0) - dy(w.g0) - w.g0 * w.h1 + w.h0 * w.g1,
          dx(w.h1) - dy(w.g1) - (w.g0 * w.h2).scaled(K(2)) + (w.h0 * w.g2).scaled(K(2)),
          dx(w.h2) - dy(w.g2) - w.g1 * w.h2 + w.g2 * w.h1};
}

// dz + (F + z G)(dy - z dx)
template <class K>
RiccatiForm<K> perturbation_form(const BiSeries<K>& F, const BiSeries<K>& G) {
  BiSeries<K> z(std::min(F.order(), G.order()), Trunc::Total);
  return {z, -F, -G, F, G, z};
}

// Riccati form whose leaves are the graphs z = e_t of the members:
// dH/H_z with H = (P + z Q)/(R + z S).
template <class K>
RiccatiForm<K> riccati_from_pencil(const Pencil<K>& pen) {
  using B = BiSeries<K>;
  B det = pen.Q * pen.R - pen.P * pen.S;
  if (detail::is_zero_at_base(det.coeff(0, 0))) fail(ErrorKind::DegeneratePencil, "dependent pencil");
  B di = det.reciprocal();
  // (P' + z Q')(R + z S) - (P + z Q)(R' + z S') for ' = d/dx or d/dy
  auto part = [&](auto d) {
    B Pd = d(pen.P), Qd = d(pen.Q), Rd = d(pen.R), Sd = d(pen.S);
    return std::array<B, 3>{(Pd * pen.R - pen.P * Rd) * di, (Pd * pen.S + Qd * pen.R - pen.P * Sd - pen.Q * Rd) * di,
                            (Qd * pen.S - pen.Q * Sd) * di};
  };
  auto gx = part([](const B& f) { return f.d_dx(); });
  auto hy = part([](const B& f) { return f.d_dy(); });
  return {gx[0], gx[1], gx[2], hy[0], hy[1], hy[2]};
}

namespace detail {

template <class K>
BiSeries<K> integrate_x(const BiSeries<K>& f) {
  BiSeries<K> r(f.order() + 1, Trunc::Total);
  f.for_each([&](int m, int n, const K& c) { r.add(m + 1, n, c / K(m + 1)); });
  return r;
}

template <class K>
BiSeries<K> integrate_y(const BiSeries<K>& f) {
  BiSeries<K> r(f.order() + 1, Trunc::Total);
  f.for_each([&](int m, int n, const K& c) { r.add(m, n + 1, c / K(n + 1)); });
  return r;
}

}  // namespace detail

// F with dF ^ (P dx + Q dy) = 0: F = y + O(x) when Q(0) != 0, else F = x + O(y).
template <class K>
BiSeries<K> first_integral(const BiSeries<K>& P, const BiSeries<K>& Q) {
  using B = BiSeries<K>;
  int N = std::min(P.order(), Q.order());
  bool use_q = !detail::is_zero_at_base(Q.coeff(0, 0));
  if (!use_q && detail::is_zero_at_base(P.coeff(0, 0))) fail(ErrorKind::DegenerateWeb, "form vanishes at the basepoint");
  // Q != 0: F_x = (P/Q) F_y, F(0, y) = y. Otherwise F_y = (Q/P) F_x, F(x, 0) = x.
  B ratio = use_q ? P * Q.reciprocal() : Q * P.reciprocal();
  B seed = use_q ? B::y(N, Trunc::Total) : B::x(N, Trunc::Total);
  B F = seed;
  for (int it = 0; it <= N + 1; ++it) {
    B rhs = use_q ? ratio * F.d_dy() : ratio * F.d_dx();
    F = (seed + (use_q ? detail::integrate_x(rhs) : detail::integrate_y(rhs))).truncated(N);
  }
  return F;
}

// Curvature dx^dy coefficient of the 3-web formed by members t1, t2, t3.
template <class K>
BiSeries<K> curvature(const Pencil<K>& pen, const Param<K>& t1, const Param<K>& t2, const Param<K>& t3) {
  using B = BiSeries<K>;
  auto [P1, Q1] = detail::member(pen, t1);
  auto [P3, Q3] = detail::member(pen, t3);
  if (detail::is_zero_at_base((P1 * Q3 - Q1 * P3).coeff(0, 0)))
    fail(ErrorKind::DegeneratePencil, "chosen members are not transverse at the basepoint");
  // omega2 = p omega1 + q omega3 with constant p, q
  auto [a1, b1] = detail::member_coords(t1);
  auto [a2, b2] = detail::member_coords(t2);
  auto [a3, b3] = detail::member_coords(t3);
  K det = a1 * b3 - a3 * b1;
  if (detail::is_zero_at_base(det)) fail(ErrorKind::DegeneratePencil, "repeated member");
  K p = (a2 * b3 - a3 * b2) / det, q = (a1 * b2 - a2 * b1) / det;
  if (detail::is_zero_at_base(p) || detail::is_zero_at_base(q)) fail(ErrorKind::DegeneratePencil, "repeated member");
  B X = first_integral(P1, Q1), Y = first_integral(P3, Q3);
  // dX = lam omega1, dY = mu omega3
  bool q1 = !detail::is_zero_at_base(Q1.coeff(0, 0)), q3 = !detail::is_zero_at_base(Q3.coeff(0, 0));
  B lam = q1 ? X.d_dy() * Q1.reciprocal() : X.d_dx() * P1.reciprocal();
  B mu = q3 ? Y.d_dy() * Q3.reciprocal() : Y.d_dx() * P3.reciprocal();
  // omega2 ~ dX + a dY
  B a = (lam * mu.reciprocal()).scaled(q / p);
  B Xx = X.d_dx(), Xy = X.d_dy(), Yx = Y.d_dx(), Yy = Y.d_dy();
  B J = Xx * Yy - Xy * Yx;
  B Ji = J.reciprocal();
  auto dY = [&](const B& f) { return (f.d_dy() * Xx - f.d_dx() * Xy) * Ji; };
  auto dX = [&](const B& f) { return (f.d_dx() * Yy - f.d_dy() * Yx) * Ji; };
  return dX(dY(a) * a.reciprocal()) * J;
}

// Default member choice 0, 1, infinity.
template <class K>
BiSeries<K> curvature(const Pencil<K>& pen) {
  return curvature(pen, Param<K>(K(0)), Param<K>(K(1)), Param<K>());
}

// (e1 - e3)(e2 - e4) / ((e2 - e3)(e1 - e4))
template <class K>
BiSeries<K> cross_ratio(const BiSeries<K>& e1, const BiSeries<K>& e2, const BiSeries<K>& e3, const BiSeries<K>& e4) {
  const BiSeries<K>* es[4] = {&e1, &e2, &e3, &e4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (detail::is_zero_at_base((*es[i] - *es[j]).coeff(0, 0)))
        fail(ErrorKind::CoincidentFoliations, "two slope fields agree at the basepoint");
  return (e1 - e3) * (e2 - e4) * ((e2 - e3) * (e1 - e4)).reciprocal();
}

template <class K>
using Form = std::pair<BiSeries<K>, BiSeries<K>>;

// The pencil through eta0 (t = 0), eta1 (t = 1), etaInf (t = infinity):
// omega0 = c0 eta0, omegaInf = cinf etaInf with c0 eta0 + cinf etaInf = eta1.
template <class K>
Pencil<K> complete_web_to_pencil(const Form<K>& h0, const Form<K>& h1, const Form<K>& hi,
                                 std::array<K, 2> bp = {K(0), K(0)}) {
  using B = BiSeries<K>;
  auto wedge = [](const Form<K>& a, const Form<K>& b) { return a.first * b.second - a.second * b.first; };
  B d = wedge(h0, hi);
  for (auto w : {d, wedge(h0, h1), wedge(h1, hi)})
    if (detail::is_zero_at_base(w.coeff(0, 0))) fail(ErrorKind::DegenerateWeb, "foliations not transverse at the basepoint");
  B di = d.reciprocal();
  B c0 = wedge(h1, hi) * di, ci = wedge(h0, h1) * di;
  return {c0 * h0.first, c0 * h0.second, ci * hi.first, ci * hi.second, bp};
}

// same with slope fields, eta = e dx - dy
template <class K>
Pencil<K> complete_web_to_pencil(const BiSeries<K>& e0, const BiSeries<K>& e1, const BiSeries<K>& einf,
                                 std::array<K, 2> bp = {K(0), K(0)}) {
  auto eta = [](const BiSeries<K>& e) { return Form<K>{e, -BiSeries<K>::constant(K(1), e.order(), Trunc::Total)}; };
  return complete_web_to_pencil(eta(e0), eta(e1), eta(einf), bp);
}

template <class K>
struct NodalFamily {
  K alpha, beta;
  ProjectiveStructure<K> structure;
  Pencil<K> pencil;
};

// 27 a^2 + 4 b^3 - 12 b^2 + 9 b - 2
template <class K>
K nodal_cubic(const K& a, const K& b) {
  return K(27) * a * a + K(4) * b * b * b - K(12) * b * b + K(9) * b - K(2);
}

// omega_z = e^x (g y + (2g^2 - 1) e^x) dx - (y + 2 g e^x) dy + z (dy - g e^x dx), at (0, y0)
template <class K>
NodalFamily<K> nodal_family(const K& g, int N) {
  using B = BiSeries<K>;
  K y0(1);
  if (detail::is_zero_at_base(y0 + K(2) * g)) y0 = K(2);
  const Trunc T = Trunc::Total;
  B ex = series_exp(B::x(N, T));
  B y = B::y(N, T) + B::constant(y0, N, T);
  K a = g * (K(2) * g * g - K(1)), b = K(2) - K(3) * g * g;
  Pencil<K> pen{ex * (y.scaled(g) + ex.scaled(K(2) * g * g - K(1))), -(y + ex.scaled(K(2) * g)), -ex.scaled(g),
                B::constant(K(1), N, T), {K(0), y0}};
  auto model = catalog<K>("ii.a", {a, b}, N, {K(0), y0}).structure;
  return {a, b, model, pen};
}

// omega_t^{+-} = (y^2 dx - (x y +- i) dy) + t (x^2 dy - (x y -+ i) dx) at bp.
// The members are the shears y -> y + t x of the t = 0 member.
template <class K>
std::pair<Pencil<K>, Pencil<K>> sl2_pencils(int N, std::array<K, 2> bp = {K(1), K(0)}) {
  using B = BiSeries<K>;
  const Trunc T = Trunc::Total;
  B x = B::x(N, T) + B::constant(bp[0], N, T), y = B::y(N, T) + B::constant(bp[1], N, T);
  auto make = [&](const K& s) {
    return Pencil<K>{y * y, -(x * y + B::constant(s, N, T)), -(x * y - B::constant(s, N, T)), x * x, bp};
  };
  return {make(K::i()), make(-K::i())};
}

// omega_t(1, t) restricted to the line through the basepoint with slope m
template <class K>
BiSeries<K> restrict_to_line(const BiSeries<K>& W, const K& m) {
  int N = W.order();
  return substitute(W, BiSeries<K>::x(N, Trunc::Total), BiSeries<K>::x(N, Trunc::Total).scaled(m));
}

template <class K>
BiSeries<K> line_leaf_residual(const Pencil<K>& pen, const K& t) {
  auto [a, b] = detail::member(pen, Param<K>(t));
  return restrict_to_line(a + b.scaled(t), t);
}

}  // namespace plusone
