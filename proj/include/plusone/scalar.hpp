#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <complex>
#include <ostream>
#include <string>

#include "plusone/errors.hpp"

namespace plusone {

// Exact Gaussian rational re + i*im.
class Exact {
 public:
  static constexpr bool is_exact = true;
  using scalar_type = Exact;

  mpq_class re, im;

  Exact() : re(0), im(0) {}
  Exact(int v) : re(v), im(0) {}
  Exact(long v) : re(v), im(0) {}
  Exact(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static Exact rational(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return Exact(r);
  }
  static Exact i() { return Exact(mpq_class(0), mpq_class(1)); }

  // "p/q" or "p"; throws BadInput on garbage
  static mpq_class parse_rational(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0) fail(ErrorKind::BadInput, "not a rational: " + s);
    r.canonicalize();
    return r;
  }
  static Exact parse(const std::string& re_s, const std::string& im_s) {
    return Exact(parse_rational(re_s), parse_rational(im_s));
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  Exact conj() const { return Exact(re, -im); }
  mpq_class norm() const { return re * re + im * im; }

  Exact inv() const {
    if (is_zero()) fail(ErrorKind::NotInvertible, "division by exact zero");
    mpq_class n = norm();
    return Exact(mpq_class(re / n), mpq_class(-im / n));
  }

  Exact& operator+=(const Exact& o) { re += o.re; im += o.im; return *this; }
  Exact& operator-=(const Exact& o) { re -= o.re; im -= o.im; return *this; }
  Exact& operator*=(const Exact& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
      re *= o.re;
      return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re.swap(r);
    im.swap(i);
    return *this;
  }
  Exact& operator/=(const Exact& o) { return *this *= o.inv(); }

  friend Exact operator+(Exact a, const Exact& b) { return a += b; }
  friend Exact operator-(Exact a, const Exact& b) { return a -= b; }
  friend Exact operator*(Exact a, const Exact& b) { return a *= b; }
  friend Exact operator/(Exact a, const Exact& b) { return a /= b; }
  friend Exact operator-(const Exact& a) { return Exact(mpq_class(-a.re), mpq_class(-a.im)); }
  friend bool operator==(const Exact& a, const Exact& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  double magnitude() const { return std::abs(to_complex()); }

  std::string str() const {
    if (sgn(im) == 0) return re.get_str();
    return "(" + re.get_str() + (sgn(im) < 0 ? "" : "+") + im.get_str() + "i)";
  }
  friend std::ostream& operator<<(std::ostream& os, const Exact& a) { return os << a.str(); }
};

// Double-complex scalar; equality is |a-b| <= tolerance().
class Float {
 public:
  static constexpr bool is_exact = false;
  using scalar_type = Float;

  std::complex<double> v;

  static double& tolerance() {
    static double tol = 1e-10;
    return tol;
  }

  Float() : v(0.0) {}
  Float(int x) : v(double(x)) {}
  Float(long x) : v(double(x)) {}
  Float(double x) : v(x) {}
  Float(std::complex<double> z) : v(z) {}
  Float(double r, double i) : v(r, i) {}
  explicit Float(const Exact& e) : v(e.to_complex()) {}

  static Float rational(long p, long q) { return Float(double(p) / double(q)); }
  static Float i() { return Float(0.0, 1.0); }

  bool is_zero() const { return std::abs(v) <= tolerance(); }
  bool is_real() const { return std::abs(v.imag()) <= tolerance(); }
  Float conj() const { return Float(std::conj(v)); }
  Float inv() const {
    if (v == 0.0) fail(ErrorKind::NotInvertible, "division by zero");
    return Float(1.0 / v);
  }

  Float& operator+=(const Float& o) { v += o.v; return *this; }
  Float& operator-=(const Float& o) { v -= o.v; return *this; }
  Float& operator*=(const Float& o) { v *= o.v; return *this; }
  Float& operator/=(const Float& o) { v /= o.v; return *this; }
  friend Float operator+(Float a, const Float& b) { return a += b; }
  friend Float operator-(Float a, const Float& b) { return a -= b; }
  friend Float operator*(Float a, const Float& b) { return a *= b; }
  friend Float operator/(Float a, const Float& b) { return a /= b; }
  friend Float operator-(const Float& a) { return Float(-a.v); }
  friend bool operator==(const Float& a, const Float& b) { return std::abs(a.v - b.v) <= tolerance(); }
  friend bool operator!=(const Float& a, const Float& b) { return !(a == b); }

  std::complex<double> to_complex() const { return v; }
  double magnitude() const { return std::abs(v); }

  std::string str() const {
    char buf[64];
    if (v.imag() == 0.0) {
      std::snprintf(buf, sizeof buf, "%.17g", v.real());
    } else {
      std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", v.real(), v.imag());
    }
    return buf;
  }
  friend std::ostream& operator<<(std::ostream& os, const Float& a) { return os << a.str(); }
};

template <class S>
S from_complex(std::complex<double> z);

template <>
inline Float from_complex<Float>(std::complex<double> z) { return Float(z); }

template <>
inline Exact from_complex<Exact>(std::complex<double> z) {
  // exact binary value of the doubles
  return Exact(mpq_class(z.real()), mpq_class(z.imag()));
}

template <class S>
S power(S base, int e) {
  if (e < 0) return power(base.inv(), -e);
  S r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace plusone
