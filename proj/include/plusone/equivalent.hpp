#pragma once

#include <optional>

#include "plusone/polysolve.hpp"
#include "plusone/symmetry.hpp"

namespace plusone {

namespace detail {

// Quantities of a normal form that only see theta: b_{m,4} scales by
// theta^-3, and a_{-3,4} + b_{-2,3}^2 by theta^-4 once the b_{m,4} vanish.
template <class S>
std::vector<std::pair<S, int>> theta_weights(const Cocycle<S>& P) {
  std::vector<std::pair<S, int>> w;
  if (P.order() >= 4) {
    w.emplace_back(P.b(-2, 4), 3);
    w.emplace_back(P.b(-3, 4), 3);
    w.emplace_back(P.a(-3, 4) + P.b(-2, 3) * P.b(-2, 3), 4);
  }
  return w;
}

// On the slice b_{-2,3} = 0 only gamma = 0 survives, so the first coefficient
// with no alpha, beta dependence there scales by a pure power of theta.
// theta composes multiplicatively, so slice candidates serve the originals.
template <class S>
std::optional<std::vector<S>> slice_theta_candidates(const Cocycle<S>& P1, const Cocycle<S>& P2, bool& mismatch) {
  auto slice = [](const Cocycle<S>& P) { return act(GroupElement<S>{S(0), S(0), P.b(-2, 3), S(1)}, P); };
  Cocycle<S> A = slice(P1), B = slice(P2);
  auto tab = act_polynomial(A);
  int N = std::min(A.order(), B.order());
  for (int n = 4; n <= N; ++n)
    for (int m = -(n - 1); m <= -2; ++m)
      for (int part = 0; part < 2; ++part) {
        if (part == 1 && m > -3) continue;
        MPoly<S> p = (part == 0 ? tab.b : tab.a).coeff(m, n).subst(2, S(0));
        if (!p.is_constant()) continue;
        S c1 = p.constant(), c2 = part == 0 ? B.b(m, n) : B.a(m, n);
        if (c1.is_zero() != c2.is_zero()) {
          mismatch = true;
          return std::vector<S>{};
        }
        if (c1.is_zero()) continue;
        return field_kth_roots(c1 / c2, part == 0 ? n - 1 : n);
      }
  return std::nullopt;
}

// theta candidates; nullopt when no coefficient pins theta down
template <class S>
std::optional<std::vector<S>> theta_candidates(const Cocycle<S>& P1, const Cocycle<S>& P2, bool& mismatch) {
  auto w1 = theta_weights(P1), w2 = theta_weights(P2);
  mismatch = false;
  for (std::size_t k = 0; k < w1.size(); ++k) {
    // the theta^4 quantity is only pure when every b_{m,4} vanishes
    if (w1[k].second == 4 && !(w1[0].first.is_zero() && w1[1].first.is_zero())) break;
    bool z1 = w1[k].first.is_zero(), z2 = w2[k].first.is_zero();
    if (z1 != z2) {
      mismatch = true;
      return std::vector<S>{};
    }
    if (z1) continue;
    // v2 = v1 / theta^e
    std::vector<S> out;
    for (auto& r : field_kth_roots(w1[k].first / w2[k].first, w1[k].second)) out.push_back(r);
    return out;
  }
  return slice_theta_candidates(P1, P2, mismatch);
}

}  // namespace detail

// Some theta with act(theta, P1) = P2 to the common order, or nullopt.
// Throws Inconclusive when no finite theta candidate set exists and theta = 1
// does not work. Exact theta candidates are the roots inside Q(i) only.
template <class S>
std::optional<GroupElement<S>> equivalent(const Cocycle<S>& P1, const Cocycle<S>& P2, std::uint64_t seed = 1) {
  if (!P1.is_normal() || !P2.is_normal()) fail(ErrorKind::NotNormal, "equivalent needs normal forms");
  int N = std::min(P1.order(), P2.order());
  Cocycle<S> A = P1.truncated(N), B = P2.truncated(N);
  bool mismatch = false;
  auto cands = detail::theta_candidates(A, B, mismatch);
  if (mismatch) return std::nullopt;
  bool finite = cands.has_value();
  std::vector<S> thetas = finite ? *cands : std::vector<S>{S(1)};

  auto tab = act_polynomial(A);
  BiSeries<S> a2 = B.a_part(), b2 = B.b_part();
  for (const S& th : thetas) {
    // (a,b,g,1).P1 = (0,0,0,1/th).P2
    std::vector<std::vector<MPoly<S>>> stages;
    for (int n = 2; n <= N; ++n) {
      std::vector<MPoly<S>> row;
      for (int m = -(n - 1); m <= -2; ++m) {
        MPoly<S> q = tab.b.coeff(m, n) - MPoly<S>(b2.coeff(m, n) * power(th, n - 1));
        if (!q.is_zero()) row.push_back(q);
        if (m <= -3) {
          MPoly<S> p = tab.a.coeff(m, n) - MPoly<S>(a2.coeff(m, n) * power(th, n));
          if (!p.is_zero()) row.push_back(p);
        }
      }
      stages.push_back(row);
    }
    std::vector<Triple<S>> pts;
    if constexpr (S::is_exact) {
      std::vector<MPoly<S>> G;
      bool dead = false, gave_up = false;
      for (auto& st : stages) {
        std::vector<MPoly<S>> in = G;
        bool grew = false;
        for (auto& p : st) {
          MPoly<S> r = G.empty() ? p : normal_form(p, G);
          if (!r.is_zero()) {
            in.push_back(r);
            grew = true;
          }
        }
        if (!grew) continue;
        auto gb = groebner(in);
        if (!gb) {
          gave_up = true;
          break;
        }
        G = *gb;
        if (G.size() == 1 && G[0].is_constant()) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      if (gave_up) fail(ErrorKind::Inconclusive, "equivalence system exceeded the Groebner bounds");
      pts = solve_basis(G, true).points;
    } else {
      std::vector<MPoly<S>> all;
      for (auto& st : stages) all.insert(all.end(), st.begin(), st.end());
      if (all.empty()) {
        pts.push_back({S(0), S(0), S(0)});
      } else {
        for (auto& r : newton_multistart(all, seed)) pts.push_back({S(r.x[0]), S(r.x[1]), S(r.x[2])});
      }
    }
    for (auto& p : pts) {
      GroupElement<S> t{p[0], p[1], p[2], th};
      Cocycle<S> img = act(t, A);
      bool ok = true;
      if constexpr (S::is_exact) {
        ok = img == B;
      } else {
        (img.first - B.first).for_each([&](int, int, const S& v) { ok = ok && v.magnitude() < 1e-8; });
        (img.second - B.second).for_each([&](int, int, const S& v) { ok = ok && v.magnitude() < 1e-8; });
      }
      if (ok) return t;
    }
  }
  if (!finite) fail(ErrorKind::Inconclusive, "no coefficient determines theta");
  return std::nullopt;
}

}  // namespace plusone
