#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "plusone/closedform.hpp"
#include "plusone/projstruct.hpp"

namespace plusone {

// Real geodesic flow. Coefficients (A, B, C, D) at a real point.
using Field = std::function<std::array<double, 4>(double, double)>;

// real part of a registry evaluator
inline Field field_from(const Evaluator& e) {
  return [e](double x, double y) {
    auto v = evaluate(e, {x, 0.0}, {y, 0.0});
    return std::array<double, 4>{v[0].real(), v[1].real(), v[2].real(), v[3].real()};
  };
}

// truncated Taylor sums of a structure, trusted only within rho of the basepoint
template <class R>
Field field_from_series(const ProjectiveStructure<R>& P, double rho) {
  double x0 = P.basepoint[0].to_complex().real(), y0 = P.basepoint[1].to_complex().real();
  return [P, rho, x0, y0](double x, double y) {
    double u = x - x0, v = y - y0;
    if (std::hypot(u, v) > rho) fail(ErrorKind::EvaluatorDomain, "point outside the series radius");
    std::array<double, 4> out{};
    const BiSeries<R>* s[4] = {&P.A, &P.B, &P.C, &P.D};
    for (int k = 0; k < 4; ++k)
      s[k]->for_each([&](int m, int n, const R& c) { out[k] += c.to_complex().real() * std::pow(u, m) * std::pow(v, n); });
    return out;
  };
}

// chart 0: (x, y, z), z = dy/dx, parameter x. chart 1: (x, y, w), w = dx/dy, parameter y.
struct GeoState {
  double x = 0, y = 0, s = 0;
  int chart = 0;

  // tangent direction (dx, dy)
  std::array<double, 2> direction() const { return chart == 0 ? std::array<double, 2>{1, s} : std::array<double, 2>{s, 1}; }
  double slope() const { return chart == 0 ? s : (s == 0 ? std::numeric_limits<double>::infinity() : 1 / s); }
};

struct Trajectory {
  std::vector<GeoState> samples;
  double h = 0;
  std::string method = "rk4";
};

namespace detail {

inline std::array<double, 3> geo_rhs(const Field& F, int chart, double x, double y, double s) {
  auto [A, B, C, D] = F(x, y);
  if (chart == 0) return {1, s, A + s * (B + s * (C + s * D))};
  return {s, 1, -(D + s * (C + s * (B + s * A)))};
}

// one RK4 step of parameter size h in the current chart
inline GeoState rk4_step(const Field& F, const GeoState& st, double h) {
  auto add = [&](const std::array<double, 3>& k, double f) {
    return std::array<double, 3>{st.x + f * k[0], st.y + f * k[1], st.s + f * k[2]};
  };
  auto k1 = geo_rhs(F, st.chart, st.x, st.y, st.s);
  auto p = add(k1, h / 2);
  auto k2 = geo_rhs(F, st.chart, p[0], p[1], p[2]);
  p = add(k2, h / 2);
  auto k3 = geo_rhs(F, st.chart, p[0], p[1], p[2]);
  p = add(k3, h);
  auto k4 = geo_rhs(F, st.chart, p[0], p[1], p[2]);
  GeoState out = st;
  out.x += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
  out.y += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
  out.s += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
  return out;
}

}  // namespace detail

// RK4 with |h| per step in the active chart; swaps to the other chart when
// the slope there exceeds 2 in modulus (swap = false keeps the start chart).
inline Trajectory integrate(const Field& F, GeoState st, double h, int steps, bool swap = true) {
  Trajectory tr;
  tr.h = h;
  tr.samples.push_back(st);
  // signed step along the parameter of the current chart
  double step = h;
  for (int k = 0; k < steps; ++k) {
    st = detail::rk4_step(F, st, step);
    if (!std::isfinite(st.x) || !std::isfinite(st.y) || !std::isfinite(st.s))
      fail(ErrorKind::NoConvergence, "trajectory left the finite range");
    if (swap && std::abs(st.s) > 2) {
      // keep moving the same way: dy = z dx, dx = w dy
      step = st.s > 0 ? step : -step;
      st.s = 1 / st.s;
      st.chart = 1 - st.chart;
    }
    tr.samples.push_back(st);
  }
  return tr;
}

struct ShootingResult {
  double slope = 0;  // dy/dx at p, inf when vertical
  std::array<double, 2> direction{1, 0};
  double error = 0;
  int iterations = 0;
};

// Geodesic from p through q by secant on the initial slope.
inline ShootingResult shoot(const Field& F, std::array<double, 2> p, std::array<double, 2> q, double tol = 1e-10,
                            double h = 1e-2, int max_iter = 60) {
  double dx = q[0] - p[0], dy = q[1] - p[1];
  if (std::hypot(dx, dy) == 0) fail(ErrorKind::BadInput, "shoot needs distinct points");
  // parametrize by the dominant coordinate; the other is the mismatch
  int chart = std::abs(dx) >= std::abs(dy) ? 0 : 1;
  double span = chart == 0 ? dx : dy;
  int steps = std::max(4, int(std::ceil(std::abs(span) / h)));
  double step = span / steps;
  auto miss = [&](double s) {
    GeoState st{p[0], p[1], s, chart};
    auto tr = integrate(F, st, step, steps, false);
    const auto& e = tr.samples.back();
    return chart == 0 ? e.y - q[1] : e.x - q[0];
  };
  double s0 = chart == 0 ? dy / dx : dx / dy, s1 = s0 + 0.05;
  ShootingResult r;
  double f0, f1;
  try {
    f0 = miss(s0);
    f1 = miss(s1);
  } catch (const Error&) {
    fail(ErrorKind::NoConvergence, "initial shots diverged");
  }
  for (int it = 1; it <= max_iter; ++it) {
    r.iterations = it;
    if (std::abs(f1) < tol) break;
    double den = f1 - f0;
    if (den == 0) break;
    double s2 = s1 - f1 * (s1 - s0) / den;
    s0 = s1;
    f0 = f1;
    s1 = s2;
    try {
      f1 = miss(s1);
    } catch (const Error&) {
      fail(ErrorKind::NoConvergence, "shot diverged");
    }
  }
  r.error = std::abs(f1);
  if (!(r.error < tol)) fail(ErrorKind::NoConvergence, "shooting did not reach the target");
  GeoState st{p[0], p[1], s1, chart};
  r.slope = st.slope();
  r.direction = st.direction();
  return r;
}

// (e1 - e3)(e2 - e4) / ((e2 - e3)(e1 - e4)) on directions [a : b], slope b / a
inline double cross_ratio_dirs(const std::array<std::array<double, 2>, 4>& d) {
  auto w = [&](int i, int j) { return d[i][0] * d[j][1] - d[j][0] * d[i][1]; };
  return w(0, 2) * w(1, 3) / (w(1, 2) * w(0, 3));
}

struct Grid {
  double x0, x1, y0, y1;
  int nx = 20, ny = 20;
};

struct CrossRatioCell {
  double x, y, value;
  bool valid;
};

struct CrossRatioField {
  std::vector<CrossRatioCell> cells;

  // variance over valid cells
  double variance() const {
    double s = 0, s2 = 0;
    int n = 0;
    for (auto& c : cells)
      if (c.valid) {
        s += c.value;
        s2 += c.value * c.value;
        ++n;
      }
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    double m = s / n;
    return std::max(0.0, s2 / n - m * m);
  }
  int valid_count() const {
    int n = 0;
    for (auto& c : cells) n += c.valid;
    return n;
  }
};

namespace detail {

inline double distance_to(const Trajectory& tr, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < tr.samples.size(); ++k) {
    double ax = tr.samples[k - 1].x, ay = tr.samples[k - 1].y, bx = tr.samples[k].x, by = tr.samples[k].y;
    double vx = bx - ax, vy = by - ay, L = vx * vx + vy * vy;
    double t = L > 0 ? std::clamp(((x - ax) * vx + (y - ay) * vy) / L, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(ax + t * vx - x, ay + t * vy - y));
  }
  return best;
}

// the geodesic from p to q as a polyline, with its end continued a little on both sides
inline Trajectory geodesic_through(const Field& F, std::array<double, 2> p, std::array<double, 2> q, double h) {
  auto r = shoot(F, p, q, 1e-10, h);
  double dx = q[0] - p[0], dy = q[1] - p[1];
  int chart = std::abs(dx) >= std::abs(dy) ? 0 : 1;
  double span = chart == 0 ? dx : dy;
  int steps = std::max(4, int(std::ceil(std::abs(span) / h)));
  double s = chart == 0 ? r.direction[1] / r.direction[0] : r.direction[0] / r.direction[1];
  return integrate(F, GeoState{p[0], p[1], s, chart}, span / steps, steps, false);
}

}  // namespace detail

// Cross-ratio of the four foliations by geodesics through p1..p4, sampled on
// a grid. Cells within margin of the common geodesic, or whose shots fail,
// are invalid.
inline CrossRatioField cross_ratio_field(const Field& F, const std::array<std::array<double, 2>, 4>& pts, const Grid& g,
                                         double margin = 0.05, double h = 1e-2, double tol = 1e-4) {
  auto line = detail::geodesic_through(F, pts[0], pts[3], h);
  for (int k : {1, 2})
    if (detail::distance_to(line, pts[k][0], pts[k][1]) > tol)
      fail(ErrorKind::BadInput, "the four points are not on one geodesic");
  CrossRatioField out;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double x = g.nx == 1 ? g.x0 : g.x0 + (g.x1 - g.x0) * i / (g.nx - 1);
      double y = g.ny == 1 ? g.y0 : g.y0 + (g.y1 - g.y0) * j / (g.ny - 1);
      CrossRatioCell c{x, y, 0, false};
      if (detail::distance_to(line, x, y) >= margin) {
        try {
          std::array<std::array<double, 2>, 4> d;
          for (int k = 0; k < 4; ++k) d[k] = shoot(F, {x, y}, pts[k], 1e-11, h).direction;
          c.value = cross_ratio_dirs(d);
          c.valid = std::isfinite(c.value);
        } catch (const Error&) {
          c.valid = false;
        }
      }
      out.cells.push_back(c);
    }
  return out;
}

}  // namespace plusone
