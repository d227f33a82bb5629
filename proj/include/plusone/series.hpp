#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <vector>

#include "plusone/poly.hpp"
#include "plusone/scalar.hpp"

namespace plusone {

template <class R>
using scalar_of = typename R::scalar_type;

// Finite Laurent polynomial in x, stored densely from exponent lo.
template <class R>
class XLaurent {
 public:
  int lo = 0;
  std::vector<R> c;

  bool is_zero() const { return c.empty(); }
  int min_exp() const { return lo; }
  int max_exp() const { return lo + int(c.size()) - 1; }
  R get(int m) const {
    if (c.empty() || m < lo || m > max_exp()) return R(0);
    return c[m - lo];
  }
  void add(int m, const R& v) {
    if (v.is_zero()) return;
    if (c.empty()) {
      lo = m;
      c.push_back(v);
      return;
    }
    if (m < lo) {
      c.insert(c.begin(), lo - m, R(0));
      lo = m;
    } else if (m > max_exp()) {
      c.resize(m - lo + 1, R(0));
    }
    c[m - lo] += v;
    if (m == lo || m == max_exp()) trim();
  }
  void set(int m, const R& v) {
    R cur = get(m);
    add(m, v - cur);
  }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    size_t k = 0;
    while (k < c.size() && c[k].is_zero()) ++k;
    if (k) {
      c.erase(c.begin(), c.begin() + k);
      lo += int(k);
    }
    if (c.empty()) lo = 0;
  }
  // drop exponents above cap
  void cap(int top) {
    if (c.empty()) return;
    if (top < lo) {
      c.clear();
      lo = 0;
      return;
    }
    if (top < max_exp()) c.resize(top - lo + 1);
    trim();
  }
  bool is_monomial() const {
    int nz = 0;
    for (auto& v : c) nz += !v.is_zero();
    return nz == 1;
  }
  XLaurent scaled(const R& f) const {
    XLaurent r;
    if (f.is_zero()) return r;
    r.lo = lo;
    r.c.reserve(c.size());
    for (auto& v : c) r.c.push_back(v * f);
    r.trim();
    return r;
  }
  XLaurent shifted(int k) const {
    XLaurent r = *this;
    if (!r.c.empty()) r.lo += k;
    return r;
  }
  XLaurent& operator+=(const XLaurent& o) {
    if (o.c.empty()) return *this;
    if (c.empty()) return *this = o;
    int nlo = std::min(lo, o.lo), nhi = std::max(max_exp(), o.max_exp());
    if (nlo < lo) c.insert(c.begin(), lo - nlo, R(0));
    lo = nlo;
    c.resize(nhi - lo + 1, R(0));
    for (size_t k = 0; k < o.c.size(); ++k) c[o.lo - lo + k] += o.c[k];
    trim();
    return *this;
  }
  XLaurent& operator-=(const XLaurent& o) {
    XLaurent neg = o.scaled(R(-1));
    return *this += neg;
  }
  // this += a*b, keeping exponents <= top
  void add_product(const XLaurent& a, const XLaurent& b, int top = INT_MAX) {
    if (a.c.empty() || b.c.empty()) return;
    int plo = a.lo + b.lo;
    int phi = std::min(a.max_exp() + b.max_exp(), top);
    if (phi < plo) return;
    std::vector<R> buf(phi - plo + 1, R(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (size_t j = 0; j < b.c.size(); ++j) {
        int e = int(i + j);
        if (plo + e > phi) break;
        buf[e] += a.c[i] * b.c[j];
      }
    }
    XLaurent p;
    p.lo = plo;
    p.c = std::move(buf);
    p.trim();
    *this += p;
  }
  friend bool operator==(const XLaurent& a, const XLaurent& b) {
    XLaurent d = a;
    d -= b;
    return d.is_zero();
  }
};

// Truncated univariate series c_0 + c_1 y + ... + c_N y^N.
template <class R>
class USeries {
 public:
  std::vector<R> c;

  USeries() = default;
  explicit USeries(int N) : c(N + 1, R(0)) {}
  USeries(std::vector<R> v) : c(std::move(v)) {}

  static USeries constant(const R& v, int N) {
    USeries s(N);
    s.c[0] = v;
    return s;
  }
  static USeries identity(int N) {
    USeries s(N);
    if (N >= 1) s.c[1] = R(1);
    return s;
  }

  int order() const { return int(c.size()) - 1; }
  R operator[](int k) const { return k <= order() ? c[k] : R(0); }
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!c[k].is_zero()) return k;
    return order() + 1;
  }
  USeries truncated(int N) const {
    USeries r(N);
    for (int k = 0; k <= std::min(N, order()); ++k) r.c[k] = c[k];
    return r;
  }

  friend USeries operator+(const USeries& a, const USeries& b) {
    int N = std::min(a.order(), b.order());
    USeries r(N);
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend USeries operator-(const USeries& a, const USeries& b) {
    int N = std::min(a.order(), b.order());
    USeries r(N);
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
  }
  friend USeries operator-(const USeries& a) { return a.scaled(R(-1)); }
  friend USeries operator*(const USeries& a, const USeries& b) {
    int N = std::min(a.order() + b.valuation(), b.order() + a.valuation());
    N = std::min(N, std::max(a.order(), b.order()));
    USeries r(N);
    for (int i = 0; i <= std::min(N, a.order()); ++i) {
      if (a.c[i].is_zero()) continue;
      for (int j = 0; i + j <= N && j <= b.order(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  USeries scaled(const R& f) const {
    USeries r = *this;
    for (auto& v : r.c) v = v * f;
    return r;
  }
  USeries derivative() const {
    USeries r(std::max(order() - 1, 0));
    for (int k = 1; k <= order(); ++k) r.c[k - 1] = c[k] * R(k);
    return r;
  }
  USeries inv() const {
    if (c.empty() || c[0].is_zero()) fail(ErrorKind::NotInvertible, "series with zero constant term");
    int N = order();
    USeries r(N);
    R i0 = c[0].inv();
    r.c[0] = i0;
    for (int n = 1; n <= N; ++n) {
      R s(0);
      for (int k = 1; k <= n; ++k) s += c[k] * r.c[n - k];
      r.c[n] = -(s * i0);
    }
    return r;
  }
  friend bool operator==(const USeries& a, const USeries& b) {
    int N = std::min(a.order(), b.order());
    for (int k = 0; k <= N; ++k)
      if (a.c[k] != b.c[k]) return false;
    return true;
  }
};

// f(g(y)); g(0) must vanish
template <class R>
USeries<R> compose_u(const USeries<R>& f, const USeries<R>& g) {
  if (g.order() >= 0 && !g.c[0].is_zero()) fail(ErrorKind::NonzeroConstantTerm, "inner series has g(0) != 0");
  int v = g.valuation();
  int N = g.order();
  if (v <= N) N = std::min(N, (f.order() + 1) * v - 1);
  USeries<R> r = USeries<R>::constant(f[f.order()], N);
  for (int k = f.order() - 1; k >= 0; --k) {
    r = (r * g).truncated(N);
    r.c[0] += f.c[k];
  }
  return r.truncated(N);
}

// compositional inverse; needs f(0)=0 and f'(0) invertible
template <class R>
USeries<R> revert(const USeries<R>& f) {
  int N = f.order();
  if (N < 1 || !f.c[0].is_zero() || f.c[1].is_zero()) fail(ErrorKind::NotInvertible, "revert needs f(0)=0, f'(0)!=0");
  R i1 = f.c[1].inv();
  USeries<R> g(N);
  g.c[1] = i1;
  for (int k = 2; k <= N; ++k) {
    USeries<R> h = compose_u(f, g);
    g.c[k] = -(h[k] * i1);
  }
  return g;
}

enum class Trunc { YDeg, Total };

// sum_{n<=N} p_n(x) y^n with XLaurent p_n. In YDeg mode x-exponents are
// unbounded Laurent; in Total mode terms are x^m y^n with m,n >= 0 and
// m+n <= N (power series at a basepoint).
template <class R>
class BiSeries {
 public:
  using S = scalar_of<R>;

  BiSeries() : BiSeries(0) {}
  explicit BiSeries(int N, Trunc mode = Trunc::YDeg) : mode_(mode), rows_(std::max(N, -1) + 1) {}

  static BiSeries monomial(const R& c, int m, int n, int N, Trunc mode = Trunc::YDeg) {
    BiSeries s(N, mode);
    s.add(m, n, c);
    return s;
  }
  static BiSeries constant(const R& c, int N, Trunc mode = Trunc::YDeg) { return monomial(c, 0, 0, N, mode); }
  static BiSeries x(int N, Trunc mode = Trunc::YDeg) { return monomial(R(1), 1, 0, N, mode); }
  static BiSeries y(int N, Trunc mode = Trunc::YDeg) { return monomial(R(1), 0, 1, N, mode); }
  // u(y) as a bivariate series
  static BiSeries from_useries(const USeries<R>& u, int N, Trunc mode = Trunc::YDeg) {
    BiSeries s(std::min(N, u.order()), mode);
    for (int n = 0; n <= s.order(); ++n) s.add(0, n, u.c[n]);
    return s;
  }
  // u(x) in Total mode
  static BiSeries from_useries_x(const USeries<R>& u, int N) {
    BiSeries s(std::min(N, u.order()), Trunc::Total);
    for (int m = 0; m <= s.order(); ++m) s.add(m, 0, u.c[m]);
    return s;
  }

  Trunc mode() const { return mode_; }
  int order() const { return int(rows_.size()) - 1; }
  const XLaurent<R>& row(int n) const { return rows_[n]; }
  XLaurent<R>& row_mut(int n) { return rows_[n]; }
  int xcap(int n) const { return mode_ == Trunc::Total ? order() - n : INT_MAX; }

  R coeff(int m, int n) const {
    if (n < 0 || n > order()) return R(0);
    return rows_[n].get(m);
  }
  void add(int m, int n, const R& v) {
    if (n < 0 || n > order()) return;
    if (mode_ == Trunc::Total && (m < 0 || m > xcap(n))) {
      if (m < 0 && !v.is_zero()) fail(ErrorKind::BadInput, "negative x-exponent in a power series");
      return;
    }
    rows_[n].add(m, v);
  }
  void set(int m, int n, const R& v) {
    if (n < 0 || n > order()) return;
    rows_[n].set(m, v);
  }

  bool is_zero() const {
    for (auto& r : rows_)
      if (!r.is_zero()) return false;
    return true;
  }
  // lowest y-degree (YDeg) or total degree (Total) carrying a term
  int valuation() const {
    int best = order() + 1;
    for (int n = 0; n <= order(); ++n) {
      if (rows_[n].is_zero()) continue;
      if (mode_ == Trunc::YDeg) return n;
      best = std::min(best, n + rows_[n].lo);
    }
    return best;
  }

  BiSeries truncated(int N) const {
    BiSeries r(std::min(N, order()), mode_);
    for (int n = 0; n <= r.order(); ++n) {
      r.rows_[n] = rows_[n];
      if (mode_ == Trunc::Total) r.rows_[n].cap(r.xcap(n));
    }
    return r;
  }

  void for_each(const std::function<void(int, int, const R&)>& fn) const {
    for (int n = 0; n <= order(); ++n)
      for (size_t k = 0; k < rows_[n].c.size(); ++k)
        if (!rows_[n].c[k].is_zero()) fn(rows_[n].lo + int(k), n, rows_[n].c[k]);
  }

  BiSeries& operator+=(const BiSeries& o) {
    check_mode(o);
    if (o.order() < order()) *this = truncated(o.order());
    for (int n = 0; n <= order(); ++n) {
      rows_[n] += o.rows_[n];
      if (mode_ == Trunc::Total) rows_[n].cap(xcap(n));
    }
    return *this;
  }
  BiSeries& operator-=(const BiSeries& o) {
    check_mode(o);
    if (o.order() < order()) *this = truncated(o.order());
    for (int n = 0; n <= order(); ++n) {
      rows_[n] -= o.rows_[n];
      if (mode_ == Trunc::Total) rows_[n].cap(xcap(n));
    }
    return *this;
  }
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator-(const BiSeries& a) { return a.scaled(R(-1)); }
  BiSeries scaled(const R& f) const {
    BiSeries r(order(), mode_);
    for (int n = 0; n <= order(); ++n) r.rows_[n] = rows_[n].scaled(f);
    return r;
  }
  friend BiSeries operator*(const R& f, const BiSeries& a) { return a.scaled(f); }
  BiSeries operator+(const R& f) const {
    BiSeries r = *this;
    r.add(0, 0, f);
    return r;
  }
  BiSeries operator-(const R& f) const { return *this + (-f); }

  // Product; known precision is min(N1 + val2, N2 + val1), capped at the
  // larger input order.
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    a.check_mode(b);
    int va = a.valuation(), vb = b.valuation();
    int N = std::min(a.order() + vb, b.order() + va);
    N = std::min(N, std::max(a.order(), b.order()));
    BiSeries r(N, a.mode_);
    for (int i = 0; i <= std::min(N, a.order()); ++i) {
      if (a.rows_[i].is_zero()) continue;
      for (int j = 0; i + j <= N && j <= b.order(); ++j) {
        if (b.rows_[j].is_zero()) continue;
        r.rows_[i + j].add_product(a.rows_[i], b.rows_[j], r.xcap(i + j));
      }
    }
    return r;
  }
  BiSeries& operator*=(const BiSeries& o) { return *this = *this * o; }

  // multiply by x^k y^l
  BiSeries shifted(int k, int l) const {
    BiSeries r(order(), mode_);
    for (int n = 0; n + l <= order(); ++n) {
      if (n + l < 0) continue;
      r.rows_[n + l] = rows_[n].shifted(k);
      if (mode_ == Trunc::Total) r.rows_[n + l].cap(r.xcap(n + l));
    }
    return r;
  }

  BiSeries reciprocal() const {
    int N = order();
    const XLaurent<R>& p0 = rows_[0];
    BiSeries r(N, mode_);
    if (mode_ == Trunc::YDeg) {
      if (!p0.is_monomial()) fail(ErrorKind::NonMonomialLeading, "y-leading Laurent coefficient is not a monomial");
      XLaurent<R> g0;
      g0.add(-p0.lo, p0.c[0].inv());
      r.rows_[0] = g0;
      for (int n = 1; n <= N; ++n) {
        XLaurent<R> s;
        for (int k = 1; k <= n; ++k) s.add_product(rows_[k], r.rows_[n - k]);
        XLaurent<R> t;
        t.add_product(s, g0);
        r.rows_[n] = t.scaled(R(-1));
      }
    } else {
      if (p0.is_zero() || p0.lo != 0) fail(ErrorKind::NonMonomialLeading, "power series is not a unit at the basepoint");
      // inverse of p0 as a power series in x
      XLaurent<R> q;
      R i0 = p0.c[0].inv();
      std::vector<R> qc(N + 1, R(0));
      qc[0] = i0;
      for (int m = 1; m <= N; ++m) {
        R s(0);
        for (int k = 1; k <= m; ++k) s += p0.get(k) * qc[m - k];
        qc[m] = -(s * i0);
      }
      for (int m = 0; m <= N; ++m) q.add(m, qc[m]);
      r.rows_[0] = q;
      for (int n = 1; n <= N; ++n) {
        XLaurent<R> s;
        for (int k = 1; k <= n; ++k) s.add_product(rows_[k], r.rows_[n - k], N - n);
        XLaurent<R> t;
        t.add_product(s, q, N - n);
        r.rows_[n] = t.scaled(R(-1));
      }
    }
    return r;
  }

  BiSeries pow_int(int k) const {
    if (k < 0) return reciprocal().pow_int(-k);
    BiSeries base = *this, r = constant(R(1), order(), mode_);
    while (k > 0) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  // f^(p/q) for f = L*(1+u) with L the leading monomial (YDeg) or the
  // constant term (Total) and u of positive valuation.
  BiSeries pow_rational(long p, long q) const {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    if (q == 1) return pow_int(int(p));
    int N = order();
    R lead;
    int k = 0;
    if (mode_ == Trunc::YDeg) {
      if (!rows_[0].is_monomial()) fail(ErrorKind::NonMonomialLeading, "pow_rational needs a monomial y-leading coefficient");
      lead = rows_[0].c[0];
      k = rows_[0].lo;
    } else {
      lead = coeff(0, 0);
      if (lead.is_zero()) fail(ErrorKind::NonMonomialLeading, "pow_rational needs a unit at the basepoint");
    }
    if ((long(k) * p) % q != 0) fail(ErrorKind::NonMonomialLeading, "fractional power of x");
    BiSeries lmono = monomial(lead, k, 0, N, mode_);
    BiSeries u = *this * lmono.reciprocal() - R(1);
    BiSeries term = constant(R(1), N, mode_), sum = term;
    S bin(1);
    for (int j = 1; j <= N; ++j) {
      bin = bin * S::rational(p - (j - 1) * q, q * j);
      term *= u;
      if (term.is_zero()) break;
      sum += term.scaled(R(bin));
    }
    R lp = rational_power(lead, p, q);
    return monomial(lp, int(long(k) * p / q), 0, N, mode_) * sum;
  }

  BiSeries d_dx() const {
    BiSeries r(mode_ == Trunc::Total ? order() - 1 : order(), mode_);
    for (int n = 0; n <= r.order(); ++n) {
      const auto& rw = rows_[n];
      for (size_t k = 0; k < rw.c.size(); ++k) {
        int m = rw.lo + int(k);
        if (m != 0) r.add(m - 1, n, rw.c[k] * R(m));
      }
    }
    return r;
  }
  BiSeries d_dy() const {
    BiSeries r(order() - 1, mode_);
    for (int n = 1; n <= order(); ++n) r.rows_[n - 1] = rows_[n].scaled(R(n));
    return r;
  }

  // Support test against V(k,l) = {(m+k, n+l) : -n <= m <= 0}.
  bool supported_in(int k, int l) const {
    bool ok = true;
    for_each([&](int m, int n, const R&) {
      int nn = n - l, mm = m - k;
      if (nn < 0 || mm > 0 || mm < -nn) ok = false;
    });
    return ok;
  }

  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    int N = std::min(a.order(), b.order());
    return (a.truncated(N) - b.truncated(N)).is_zero();
  }
  friend bool operator!=(const BiSeries& a, const BiSeries& b) { return !(a == b); }

  template <class T>
  BiSeries<T> map(const std::function<T(const R&)>& fn) const {
    BiSeries<T> r(order(), mode_);
    for_each([&](int m, int n, const R& v) { r.add(m, n, fn(v)); });
    return r;
  }

 private:
  void check_mode(const BiSeries& o) const {
    if (mode_ != o.mode_) fail(ErrorKind::BadInput, "mixing y-degree and total-degree series");
  }
  static R rational_power(const R& c, long p, long q) {
    if (c == R(1)) return R(1);
    if constexpr (std::is_same_v<R, S>) {
      R cp = power(c, int(p));
      if constexpr (S::is_exact) {
        auto roots = field_kth_roots(cp, int(q));
        if (roots.empty()) fail(ErrorKind::IrrationalRoot, "leading coefficient has no exact root");
        // principal branch: closest to the floating principal value
        auto target = std::pow(c.to_complex(), double(p) / double(q));
        return *std::min_element(roots.begin(), roots.end(), [&](const R& a, const R& b) {
          return std::abs(a.to_complex() - target) < std::abs(b.to_complex() - target);
        });
      } else {
        return R(std::pow(c.to_complex(), double(p) / double(q)));
      }
    } else {
      fail(ErrorKind::NonMonomialLeading, "fractional power of a symbolic coefficient");
    }
  }

  Trunc mode_;
  std::vector<XLaurent<R>> rows_;
};

// f(g) for g of positive valuation
template <class R>
BiSeries<R> compose_u(const USeries<R>& f, const BiSeries<R>& g) {
  int v = g.valuation();
  if (!g.coeff(0, 0).is_zero() || (g.mode() == Trunc::YDeg && v == 0))
    fail(ErrorKind::NonzeroConstantTerm, "inner series has nonzero constant term");
  int N = g.order();
  if (v <= N) N = std::min(N, (f.order() + 1) * v - 1);
  BiSeries<R> r = BiSeries<R>::constant(f[f.order()], N, g.mode());
  for (int k = f.order() - 1; k >= 0; --k) {
    r = (r * g).truncated(N);
    r.add(0, 0, f.c[k]);
  }
  return r.truncated(N);
}

// F(X, Y). YDeg: X needs a monomial y-leading coefficient, Y positive
// y-valuation. Total: X and Y vanish at the basepoint.
template <class R>
BiSeries<R> substitute(const BiSeries<R>& F, const BiSeries<R>& X, const BiSeries<R>& Y) {
  int N = std::min({F.order(), X.order(), Y.order()});
  Trunc mode = F.mode();
  if (Y.valuation() < 1 || !Y.coeff(0, 0).is_zero()) fail(ErrorKind::NonzeroConstantTerm, "substituted y has a constant term");
  if (mode == Trunc::Total && !X.coeff(0, 0).is_zero()) fail(ErrorKind::NonzeroConstantTerm, "substituted x moves the basepoint");
  int mlo = INT_MAX, mhi = INT_MIN;
  for (int n = 0; n <= F.order(); ++n) {
    if (F.row(n).is_zero()) continue;
    mlo = std::min(mlo, F.row(n).min_exp());
    mhi = std::max(mhi, F.row(n).max_exp());
  }
  BiSeries<R> out(N, mode);
  if (mlo == INT_MAX) return out;
  // powers X^m for m in [mlo, mhi]
  std::vector<BiSeries<R>> pw(mhi - mlo + 1);
  BiSeries<R> one = BiSeries<R>::constant(R(1), N, mode);
  BiSeries<R> Xt = X.truncated(N);
  if (mlo < 0) {
    BiSeries<R> Xi = Xt.reciprocal(), acc = one;
    for (int m = -1; m >= mlo; --m) {
      acc = acc * Xi;
      if (m <= mhi) pw[m - mlo] = acc;
    }
  }
  {
    BiSeries<R> acc = one;
    for (int m = 0; m <= mhi; ++m) {
      if (m > 0) acc = (acc * Xt).truncated(N);
      if (m >= mlo) pw[m - mlo] = acc;
    }
  }
  BiSeries<R> Yp = one, Yt = Y.truncated(N);
  for (int n = 0; n <= std::min(N, F.order()); ++n) {
    if (n > 0) Yp = (Yp * Yt).truncated(N);
    const auto& rw = F.row(n);
    if (rw.is_zero()) continue;
    BiSeries<R> inner(N, mode);
    for (size_t k = 0; k < rw.c.size(); ++k)
      if (!rw.c[k].is_zero()) inner += pw[rw.lo + int(k) - mlo].scaled(rw.c[k]);
    out += (inner * Yp).truncated(N);
  }
  return out.truncated(N);
}

}  // namespace plusone
