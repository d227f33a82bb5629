#pragma once

#include <optional>
#include <random>
#include <vector>

#include "plusone/poly.hpp"

namespace plusone {

template <class S>
using Triple = std::array<S, 3>;

// Remainder of f modulo G (full reduction, lex order).
template <class S>
MPoly<S> normal_form(MPoly<S> f, const std::vector<MPoly<S>>& G) {
  MPoly<S> r;
  while (!f.is_zero()) {
    Mono lm = f.lead_mono();
    S lc = f.lead_coeff();
    bool hit = false;
    for (auto& g : G) {
      if (!mono_divides(g.lead_mono(), lm)) continue;
      f -= g.times_mono(lc / g.lead_coeff(), mono_sub(lm, g.lead_mono()));
      f.t.erase(lm);  // guards against float residue; exact cancels anyway
      hit = true;
      break;
    }
    if (!hit) {
      r.t.emplace(lm, lc);
      f.t.erase(lm);
    }
  }
  return r;
}

template <class S>
MPoly<S> monic(const MPoly<S>& f) {
  return f.is_zero() ? f : f.scaled(f.lead_coeff().inv());
}

template <class S>
MPoly<S> spoly(const MPoly<S>& f, const MPoly<S>& g) {
  Mono l = mono_lcm(f.lead_mono(), g.lead_mono());
  return f.times_mono(f.lead_coeff().inv(), mono_sub(l, f.lead_mono())) -
         g.times_mono(g.lead_coeff().inv(), mono_sub(l, g.lead_mono()));
}

// Reduced lex Groebner basis by Buchberger with the coprime criterion.
// Returns nullopt when the size or degree bound is hit.
template <class S>
std::optional<std::vector<MPoly<S>>> groebner(const std::vector<MPoly<S>>& F, std::size_t max_size = 120,
                                               int max_degree = 40) {
  std::vector<MPoly<S>> G;
  for (auto& f : F)
    if (!f.is_zero()) G.push_back(monic(f));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const Mono& a = G[i].lead_mono();
    const Mono& b = G[j].lead_mono();
    if (mono_add(a, b) == mono_lcm(a, b)) continue;
    MPoly<S> r = normal_form(spoly(G[i], G[j]), G);
    if (r.is_zero()) continue;
    if (r.is_constant()) return std::vector<MPoly<S>>{MPoly<S>(1)};
    if (G.size() >= max_size || r.total_degree() > max_degree) return std::nullopt;
    G.push_back(monic(r));
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
  }
  // minimize, then interreduce
  std::vector<MPoly<S>> M;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < G.size() && !drop; ++j) {
      if (i == j || !mono_divides(G[j].lead_mono(), G[i].lead_mono())) continue;
      drop = G[j].lead_mono() != G[i].lead_mono() || j < i;
    }
    if (!drop) M.push_back(G[i]);
  }
  std::vector<MPoly<S>> out;
  for (std::size_t i = 0; i < M.size(); ++i) {
    std::vector<MPoly<S>> rest;
    for (std::size_t j = 0; j < M.size(); ++j)
      if (j != i) rest.push_back(M[j]);
    MPoly<S> tail = M[i];
    tail.t.erase(tail.lead_mono());
    MPoly<S> g = MPoly<S>::term(S(1), M[i].lead_mono()) + normal_form(tail.scaled(M[i].lead_coeff().inv()), rest);
    out.push_back(g);
  }
  std::sort(out.begin(), out.end(), [](const MPoly<S>& p, const MPoly<S>& q) { return p.lead_mono() < q.lead_mono(); });
  return out;
}

template <class S>
struct SolveResult {
  enum Kind { Empty, Finite, Positive };
  Kind kind = Empty;
  std::vector<Triple<S>> points;
  bool complete = true;  // false when some roots lie outside the coefficient field
  bool used_free = false;
};

template <class S>
bool zero_dimensional(const std::vector<MPoly<S>>& G) {
  for (int v = 0; v < 3; ++v) {
    bool ok = false;
    for (auto& g : G) {
      const Mono& m = g.lead_mono();
      if (m[v] > 0 && mono_degree(m) == m[v]) ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

namespace detail {

template <class S>
void back_substitute(const std::vector<MPoly<S>>& G, int k, Triple<S>& vals, bool free_zero, SolveResult<S>& out) {
  if (k < 0) {
    out.points.push_back(vals);
    return;
  }
  UPoly<S> acc;
  bool any = false;
  for (auto& g : G) {
    bool elim = true;
    for (auto& [m, c] : g.t)
      for (int j = 0; j < k; ++j)
        if (m[j]) elim = false;
    if (!elim) continue;
    MPoly<S> h = g;
    for (int j = k + 1; j < 3; ++j) h = h.subst(j, vals[j]);
    std::vector<S> c;
    for (auto& [m, v] : h.t) {
      if (int(c.size()) <= m[k]) c.resize(m[k] + 1, S(0));
      c[m[k]] += v;
    }
    UPoly<S> u(c);
    if (u.is_zero()) continue;
    acc = any ? UPoly<S>::gcd(acc, u) : u.monic();
    any = true;
  }
  if (!any) {
    if (!free_zero) {
      out.kind = SolveResult<S>::Positive;
      return;
    }
    out.used_free = true;
    vals[k] = S(0);
    back_substitute(G, k - 1, vals, free_zero, out);
    return;
  }
  if (acc.degree() < 1) return;
  auto roots = field_roots(acc);
  if (int(roots.size()) < acc.squarefree().degree()) out.complete = false;
  for (auto& r : roots) {
    vals[k] = r;
    back_substitute(G, k - 1, vals, free_zero, out);
  }
}

}  // namespace detail

// Points of the variety of a reduced lex basis. With free_zero, unconstrained
// variables are set to 0 (one point per branch) instead of reporting Positive.
template <class S>
SolveResult<S> solve_basis(const std::vector<MPoly<S>>& G, bool free_zero = false) {
  SolveResult<S> out;
  if (G.size() == 1 && G[0].is_constant() && !G[0].is_zero()) return out;
  if (!zero_dimensional(G) && !free_zero) {
    out.kind = SolveResult<S>::Positive;
    return out;
  }
  out.kind = SolveResult<S>::Finite;
  Triple<S> vals{S(0), S(0), S(0)};
  detail::back_substitute(G, 2, vals, free_zero, out);
  if (out.kind == SolveResult<S>::Finite && out.points.empty()) out.kind = SolveResult<S>::Empty;
  return out;
}

// Multistart damped Gauss-Newton on a square-or-overdetermined system.
struct NewtonRoot {
  std::array<std::complex<double>, 3> x;
  bool isolated;
};

namespace detail {

// numerical rank of an m x 3 complex matrix
inline int numeric_rank(std::vector<std::array<std::complex<double>, 3>> J, double tol) {
  int rank = 0;
  std::array<bool, 3> used{false, false, false};
  double scale = 0;
  for (auto& row : J)
    for (auto& v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0) return 0;
  for (std::size_t r = 0; r < J.size() && rank < 3; ++r) {
    // full pivot search over remaining rows/cols
    double best = 0;
    std::size_t bi = 0;
    int bj = -1;
    for (std::size_t i = r; i < J.size(); ++i)
      for (int j = 0; j < 3; ++j)
        if (!used[j] && std::abs(J[i][j]) > best) {
          best = std::abs(J[i][j]);
          bi = i;
          bj = j;
        }
    if (bj < 0 || best < tol * scale) break;
    std::swap(J[r], J[bi]);
    used[bj] = true;
    ++rank;
    for (std::size_t i = r + 1; i < J.size(); ++i) {
      auto f = J[i][bj] / J[r][bj];
      for (int j = 0; j < 3; ++j) J[i][j] -= f * J[r][j];
    }
  }
  return rank;
}

}  // namespace detail

template <class S>
std::vector<NewtonRoot> newton_multistart(const std::vector<MPoly<S>>& eqs, std::uint64_t seed, int starts = 64,
                                          double radius = 5.0, double dedup = 1e-6) {
  using Cd = std::complex<double>;
  using V = std::array<Cd, 3>;
  struct Eq {
    std::vector<std::pair<Mono, Cd>> f;
    std::array<std::vector<std::pair<Mono, Cd>>, 3> d;
  };
  auto flat = [](const MPoly<S>& p) {
    std::vector<std::pair<Mono, Cd>> r;
    for (auto& [m, c] : p.t) r.emplace_back(m, Cd(c.to_complex()));
    return r;
  };
  auto ev = [](const std::vector<std::pair<Mono, Cd>>& p, const V& x) {
    Cd s = 0;
    for (auto& [m, c] : p) s += c * std::pow(x[0], m[0]) * std::pow(x[1], m[1]) * std::pow(x[2], m[2]);
    return s;
  };
  std::vector<Eq> E;
  double cscale = 1;
  for (auto& p : eqs) {
    if (p.is_zero()) continue;
    Eq e{flat(p), {flat(p.diff(0)), flat(p.diff(1)), flat(p.diff(2))}};
    for (auto& [m, c] : e.f) cscale = std::max(cscale, std::abs(c));
    E.push_back(std::move(e));
  }
  std::vector<NewtonRoot> out;
  if (E.empty()) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-radius, radius);
  for (int s = 0; s < starts; ++s) {
    V x{Cd(U(rng), U(rng)), Cd(U(rng), U(rng)), Cd(U(rng), U(rng))};
    double lambda = 1e-3;
    double res = 0;
    for (int it = 0; it < 200; ++it) {
      std::vector<Cd> r;
      std::vector<V> J;
      res = 0;
      for (auto& e : E) {
        r.push_back(ev(e.f, x));
        J.push_back({ev(e.d[0], x), ev(e.d[1], x), ev(e.d[2], x)});
        res += std::norm(r.back());
      }
      if (std::sqrt(res) < 1e-13 * cscale) break;
      // (J^H J + lambda I) dx = -J^H r
      std::array<std::array<Cd, 4>, 3> A{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < E.size(); ++k) A[i][j] += std::conj(J[k][i]) * J[k][j];
        A[i][i] += lambda;
        for (std::size_t k = 0; k < E.size(); ++k) A[i][3] -= std::conj(J[k][i]) * r[k];
      }
      for (int i = 0; i < 3; ++i) {
        int p = i;
        for (int k = i + 1; k < 3; ++k)
          if (std::abs(A[k][i]) > std::abs(A[p][i])) p = k;
        std::swap(A[i], A[p]);
        if (std::abs(A[i][i]) == 0) break;
        for (int k = 0; k < 3; ++k) {
          if (k == i) continue;
          Cd f = A[k][i] / A[i][i];
          for (int j = i; j < 4; ++j) A[k][j] -= f * A[i][j];
        }
      }
      V nx = x;
      for (int i = 0; i < 3; ++i)
        if (std::abs(A[i][i]) > 0) nx[i] += A[i][3] / A[i][i];
      double nres = 0;
      for (auto& e : E) nres += std::norm(ev(e.f, nx));
      if (nres < res) {
        x = nx;
        lambda = std::max(lambda * 0.1, 1e-15);
      } else {
        lambda *= 10;
        if (lambda > 1e10) break;
      }
    }
    double fin = 0;
    std::vector<V> J;
    for (auto& e : E) {
      fin = std::max(fin, std::abs(ev(e.f, x)));
      J.push_back({ev(e.d[0], x), ev(e.d[1], x), ev(e.d[2], x)});
    }
    if (fin > 1e-9 * cscale) continue;
    bool dup = false;
    for (auto& o : out) {
      double d = 0;
      for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(o.x[i] - x[i]));
      if (d < dedup) dup = true;
    }
    if (!dup) out.push_back({x, detail::numeric_rank(J, 1e-7) == 3});
  }
  std::sort(out.begin(), out.end(), [](const NewtonRoot& a, const NewtonRoot& b) {
    for (int i = 0; i < 3; ++i) {
      if (a.x[i].real() != b.x[i].real()) return a.x[i].real() < b.x[i].real();
      if (a.x[i].imag() != b.x[i].imag()) return a.x[i].imag() < b.x[i].imag();
    }
    return false;
  });
  return out;
}

}  // namespace plusone
