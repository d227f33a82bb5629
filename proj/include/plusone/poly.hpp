#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <vector>

#include "plusone/scalar.hpp"

namespace plusone {

// Exponent vector for the three unknowns (alpha, beta, gamma).
using Mono = std::array<int, 3>;

inline Mono mono_add(const Mono& a, const Mono& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline bool mono_divides(const Mono& a, const Mono& b) { return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]; }
inline Mono mono_sub(const Mono& a, const Mono& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Mono mono_lcm(const Mono& a, const Mono& b) {
  return {std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2])};
}
inline int mono_degree(const Mono& a) { return a[0] + a[1] + a[2]; }

// Sparse polynomial in (alpha, beta, gamma) over S. Terms are kept in a map
// whose ordering (lexicographic, alpha > beta > gamma) is also the monomial
// order used by the Groebner code.
template <class S>
class MPoly {
 public:
  using scalar_type = S;
  static constexpr bool is_exact = S::is_exact;

  std::map<Mono, S> t;

  MPoly() = default;
  MPoly(int v) {
    if (v != 0) t[{0, 0, 0}] = S(v);
  }
  MPoly(const S& c) {
    if (!c.is_zero()) t[{0, 0, 0}] = c;
  }
  static MPoly var(int i) {
    MPoly p;
    Mono m{0, 0, 0};
    m[i] = 1;
    p.t[m] = S(1);
    return p;
  }
  static MPoly rational(long p, long q) { return MPoly(S::rational(p, q)); }
  static MPoly term(const S& c, const Mono& m) {
    MPoly p;
    if (!c.is_zero()) p.t[m] = c;
    return p;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first == Mono{0, 0, 0}); }
  S constant() const {
    auto it = t.find({0, 0, 0});
    return it == t.end() ? S(0) : it->second;
  }
  MPoly inv() const {
    if (!is_constant() || is_zero()) fail(ErrorKind::NotInvertible, "inverse of a non-constant polynomial");
    return MPoly(constant().inv());
  }
  const Mono& lead_mono() const { return t.rbegin()->first; }
  const S& lead_coeff() const { return t.rbegin()->second; }
  int total_degree() const {
    int d = 0;
    for (auto& [m, c] : t) d = std::max(d, mono_degree(m));
    return d;
  }
  // true when only variable v occurs (constants included)
  bool only_var(int v) const {
    for (auto& [m, c] : t)
      for (int k = 0; k < 3; ++k)
        if (k != v && m[k] != 0) return false;
    return true;
  }

  MPoly& operator+=(const MPoly& o) {
    for (auto& [m, c] : o.t) {
      auto it = t.find(m);
      if (it == t.end()) {
        t.emplace(m, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
      }
    }
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (auto& [m, c] : o.t) {
      auto it = t.find(m);
      if (it == t.end()) {
        t.emplace(m, -c);
      } else {
        it->second -= c;
        if (it->second.is_zero()) t.erase(it);
      }
    }
    return *this;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r;
    if (is_zero() || o.is_zero()) return r;
    for (auto& [m1, c1] : t)
      for (auto& [m2, c2] : o.t) {
        Mono m = mono_add(m1, m2);
        auto it = r.t.find(m);
        if (it == r.t.end())
          r.t.emplace(m, c1 * c2);
        else
          it->second += c1 * c2;
      }
    for (auto it = r.t.begin(); it != r.t.end();) {
      if (it->second.is_zero())
        it = r.t.erase(it);
      else
        ++it;
    }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(const S& c) const {
    MPoly r;
    if (c.is_zero()) return r;
    for (auto& [m, v] : t) {
      S p = v * c;
      if (!p.is_zero()) r.t.emplace(m, p);
    }
    return r;
  }
  MPoly times_mono(const S& c, const Mono& mm) const {
    MPoly r;
    for (auto& [m, v] : t) r.t.emplace(mono_add(m, mm), v * c);
    return r;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) { return a.scaled(S(-1)); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  S eval(const std::array<S, 3>& p) const {
    S r(0);
    for (auto& [m, c] : t) {
      S term = c;
      for (int k = 0; k < 3; ++k)
        if (m[k]) term *= power(p[k], m[k]);
      r += term;
    }
    return r;
  }
  // substitute variable v by a value
  MPoly subst(int v, const S& val) const {
    MPoly r;
    for (auto& [m, c] : t) {
      Mono mm = m;
      mm[v] = 0;
      r += term(c * power(val, m[v]), mm);
    }
    return r;
  }

  MPoly diff(int v) const {
    MPoly r;
    for (auto& [m, c] : t) {
      if (m[v] == 0) continue;
      Mono mm = m;
      mm[v] -= 1;
      r.t.emplace(mm, c * S(m[v]));
    }
    return r;
  }

  std::string str() const {
    if (t.empty()) return "0";
    static const char* names[3] = {"a", "b", "g"};
    std::string s;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += it->second.str();
      for (int k = 0; k < 3; ++k)
        if (it->first[k]) s += std::string("*") + names[k] + (it->first[k] > 1 ? "^" + std::to_string(it->first[k]) : "");
    }
    return s;
  }
};

// Dense univariate polynomial, coefficients low to high.
template <class S>
class UPoly {
 public:
  std::vector<S> c;

  UPoly() = default;
  explicit UPoly(std::vector<S> v) : c(std::move(v)) { trim(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int degree() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  S eval(const S& x) const {
    S r(0);
    for (int k = degree(); k >= 0; --k) r = r * x + c[k];
    return r;
  }
  UPoly derivative() const {
    std::vector<S> d;
    for (int k = 1; k <= degree(); ++k) d.push_back(c[k] * S(k));
    return UPoly(d);
  }
  UPoly monic() const {
    if (is_zero()) return *this;
    S li = c.back().inv();
    std::vector<S> d;
    for (auto& v : c) d.push_back(v * li);
    return UPoly(d);
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<S> r(a.c.size() + b.c.size() - 1, S(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return UPoly(r);
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<S> r(std::max(a.c.size(), b.c.size()), S(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return UPoly(r);
  }

  // quotient and remainder over the field S
  static std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    if (b.is_zero()) fail(ErrorKind::NotInvertible, "polynomial division by zero");
    std::vector<S> q(std::max(0, a.degree() - b.degree() + 1), S(0));
    S li = b.c.back().inv();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      int s = a.degree() - b.degree();
      S f = a.c.back() * li;
      q[s] = f;
      for (int k = 0; k <= b.degree(); ++k) a.c[s + k] -= f * b.c[k];
      a.c.pop_back();
      a.trim();
    }
    return {UPoly(q), a};
  }
  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }
  UPoly squarefree() const {
    if (degree() <= 1) return monic();
    UPoly g = gcd(*this, derivative());
    return divmod(*this, g).first.monic();
  }
};

namespace detail {

// Aberth-Ehrlich iteration for all complex roots.
inline std::vector<std::complex<long double>> aberth(const std::vector<std::complex<long double>>& a) {
  using C = std::complex<long double>;
  int n = int(a.size()) - 1;
  std::vector<C> z;
  if (n < 1) return z;
  long double rad = 0;
  for (int k = 0; k < n; ++k) rad = std::max(rad, std::pow(std::abs(a[k] / a[n]), 1.0L / (n - k)));
  rad = std::max(rad, 1e-3L);
  for (int k = 0; k < n; ++k) z.push_back(std::polar(rad, 2.0L * M_PI * (k + 0.25L) / n));
  auto evald = [&](C x, C& p, C& dp) {
    p = a[n];
    dp = 0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + a[k];
    }
  };
  for (int it = 0; it < 500; ++it) {
    long double moved = 0;
    for (int i = 0; i < n; ++i) {
      C p, dp;
      evald(z[i], p, dp);
      if (p == C(0)) continue;
      C ratio = p / dp;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      C w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      moved = std::max(moved, std::abs(w) / std::max(1.0L, std::abs(z[i])));
    }
    if (moved < 1e-18L) break;
  }
  return z;
}

// continued-fraction convergents of x
inline std::vector<mpq_class> convergents(long double x, int count) {
  std::vector<mpq_class> out;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  long double r = x;
  for (int i = 0; i < count; ++i) {
    long double fl = std::floor(r);
    if (std::abs(fl) > 1e18L) break;
    mpz_class a(static_cast<double>(fl));
    mpz_class h = a * h0 + h1, k = a * k0 + k1;
    out.emplace_back(h, k);
    out.back().canonicalize();
    h1 = h0; h0 = h; k1 = k0; k0 = k;
    long double frac = r - fl;
    if (std::abs(frac) < 1e-15L) break;
    r = 1.0L / frac;
  }
  return out;
}

}  // namespace detail

template <class S>
std::vector<std::complex<long double>> numeric_roots(const UPoly<S>& p) {
  std::vector<std::complex<long double>> a;
  for (auto& v : p.c) a.emplace_back(v.to_complex());
  return detail::aberth(a);
}

// Roots of p lying in the coefficient field. Exact: distinct Gaussian-rational
// roots, found numerically and confirmed by exact evaluation. Float: all
// distinct complex roots after a Newton polish.
template <class S>
std::vector<S> field_roots(const UPoly<S>& p) {
  std::vector<S> out;
  if (p.degree() < 1) return out;
  UPoly<S> q = p.squarefree();
  if (q.degree() == 1) {
    out.push_back(-q.c[0] / q.c[1]);
    return out;
  }
  auto approx = numeric_roots(q);
  for (auto& z : approx) {
    if constexpr (S::is_exact) {
      auto re_c = detail::convergents(z.real(), 40);
      auto im_c = detail::convergents(z.imag(), 40);
      auto pick = [](const std::vector<mpq_class>& cs, long double x) {
        std::vector<mpq_class> r;
        for (auto& c : cs) {
          if (std::abs((long double)c.get_d() - x) <= 1e-9L * std::max(1.0L, std::abs(x))) {
            r.push_back(c);
            if (r.size() == 3) break;
          }
        }
        return r;
      };
      bool found = false;
      for (auto& r : pick(re_c, z.real())) {
        for (auto& i : pick(im_c, z.imag())) {
          S cand(r, i);
          if (q.eval(cand).is_zero()) {
            if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
            found = true;
            break;
          }
        }
        if (found) break;
      }
    } else {
      S x(std::complex<double>(double(z.real()), double(z.imag())));
      UPoly<S> d = q.derivative();
      for (int it = 0; it < 5; ++it) {
        S dv = d.eval(x);
        if (dv.magnitude() == 0) break;
        x -= q.eval(x) / dv;
      }
      bool dup = false;
      for (auto& o : out)
        if ((o - x).magnitude() < 1e-8) dup = true;
      if (!dup) out.push_back(x);
    }
  }
  return out;
}

// k-th roots of z lying in the coefficient field.
template <class S>
std::vector<S> field_kth_roots(const S& z, int k) {
  std::vector<S> c(k + 1, S(0));
  c[0] = -z;
  c[k] = S(1);
  return field_roots(UPoly<S>(c));
}

}  // namespace plusone
