#pragma once

#include <map>
#include <string>

#include "plusone/fixtures.hpp"
#include "plusone/polysolve.hpp"
#include "plusone/symmetry.hpp"

namespace plusone {

enum class FibrationClass { None, One, Two, ManyOrLinear, Undetermined };

inline const char* class_name(FibrationClass c) {
  switch (c) {
    case FibrationClass::None: return "None";
    case FibrationClass::One: return "One";
    case FibrationClass::Two: return "Two";
    case FibrationClass::ManyOrLinear: return "ManyOrLinear";
    case FibrationClass::Undetermined: return "Undetermined";
  }
  return "?";
}

template <class S>
struct FibrationReport {
  FibrationClass classification = FibrationClass::Undetermined;
  std::vector<Triple<S>> witnesses;
  std::vector<MPoly<S>> residuals;
};

// a-part coefficients of (a, b, g, 1).Phi for 4 <= n <= N, grouped by n
template <class S>
std::vector<std::vector<MPoly<S>>> fibration_equations(const Cocycle<S>& Phi, int N) {
  auto tab = act_polynomial(Phi.truncated(N));
  std::vector<std::vector<MPoly<S>>> eqs;
  for (int n = 4; n <= N; ++n) {
    std::vector<MPoly<S>> row;
    for (int m = -(n - 1); m <= -3; ++m) {
      MPoly<S> p = tab.a.coeff(m, n);
      if (!p.is_zero()) row.push_back(p);
    }
    eqs.push_back(row);
  }
  return eqs;
}

template <class S>
bool is_fibration_witness(const Cocycle<S>& Phi, const Triple<S>& w) {
  BiSeries<S> a = act(GroupElement<S>{w[0], w[1], w[2], S(1)}, Phi).a_part();
  if constexpr (S::is_exact) {
    return a.is_zero();
  } else {
    bool ok = true;
    a.for_each([&](int, int, const S& v) {
      if (v.magnitude() > 1e-8) ok = false;
    });
    return ok;
  }
}

namespace detail {

inline FibrationClass by_count(std::size_t n) {
  if (n == 0) return FibrationClass::None;
  if (n == 1) return FibrationClass::One;
  if (n == 2) return FibrationClass::Two;
  return FibrationClass::ManyOrLinear;
}

}  // namespace detail

// Transverse fibrations of a normal form, as the common zeros of the a-part
// coefficients of (a, b, g, 1).Phi up to order N.
template <class S>
FibrationReport<S> detect(const Cocycle<S>& Phi, int N, std::uint64_t seed = 1) {
  if (N < 5) fail(ErrorKind::TruncationTooLow, "fibration detection needs N >= 5");
  if (N > Phi.order()) fail(ErrorKind::TruncationTooLow, "cocycle is known only to order " + std::to_string(Phi.order()));
  if (!Phi.is_normal()) fail(ErrorKind::NotNormal, "detect needs a normal form");
  Cocycle<S> P = Phi.truncated(N);
  auto stages = fibration_equations(P, N);
  std::vector<MPoly<S>> all;
  for (auto& st : stages) all.insert(all.end(), st.begin(), st.end());
  FibrationReport<S> rep;
  if (all.empty()) {
    rep.classification = FibrationClass::ManyOrLinear;
    return rep;
  }

  if constexpr (S::is_exact) {
    // staged: orders 4 and 5 first, higher orders reduced against the basis
    std::vector<MPoly<S>> G;
    for (std::size_t k = 0; k < stages.size(); ++k) {
      std::vector<MPoly<S>> extra;
      for (auto& p : stages[k]) {
        MPoly<S> r = G.empty() ? p : normal_form(p, G);
        if (!r.is_zero()) extra.push_back(r);
      }
      if (extra.empty() && !(k == 0 && G.empty())) continue;
      std::vector<MPoly<S>> in = G;
      in.insert(in.end(), extra.begin(), extra.end());
      if (in.empty()) continue;
      auto gb = groebner(in);
      if (!gb) {
        rep.residuals = all;
        return rep;
      }
      G = *gb;
      if (G.size() == 1 && G[0].is_constant()) break;
    }
    rep.residuals = G;
    auto sol = solve_basis(G);
    if (sol.kind == SolveResult<S>::Empty) {
      rep.classification = FibrationClass::None;
    } else if (sol.kind == SolveResult<S>::Positive) {
      // a curve of witnesses up to order N
      rep.classification = FibrationClass::ManyOrLinear;
    } else {
      rep.witnesses = sol.points;
      rep.classification = sol.complete ? detail::by_count(sol.points.size()) : FibrationClass::Undetermined;
    }
  } else {
    auto roots = newton_multistart(all, seed);
    bool isolated = true;
    for (auto& r : roots) {
      isolated = isolated && r.isolated;
      rep.witnesses.push_back({S(r.x[0]), S(r.x[1]), S(r.x[2])});
    }
    rep.residuals = all;
    if (isolated) {
      rep.classification = detail::by_count(roots.size());
    } else {
      rep.classification = FibrationClass::ManyOrLinear;
      rep.witnesses.clear();
    }
  }
  for (auto& w : rep.witnesses)
    if (!is_fibration_witness(P, w)) fail(ErrorKind::NormalityBroken, "witness failed re-verification");
  return rep;
}

// Normalize a_{-3,4} to zero. Prefers the gamma solution of
// g^2 - 2 g b_{-2,3} = a_{-3,4} (smallest |g|); when that root is not in the
// coefficient field, falls back to the alpha or beta direction, which enter
// a'_{-3,4} linearly through b_{-3,4}, b_{-2,4}.
template <class S>
std::pair<Cocycle<S>, GroupElement<S>> kill_order4(const Cocycle<S>& Phi) {
  if (!Phi.is_normal()) fail(ErrorKind::NotNormal, "kill_order4 needs a normal form");
  S a = Phi.a(-3, 4), b = Phi.b(-2, 3);
  GroupElement<S> t = GroupElement<S>::identity();
  if (a.is_zero()) return {Phi, t};
  auto roots = field_roots(UPoly<S>({-a, S(-2) * b, S(1)}));
  if (!roots.empty()) {
    std::sort(roots.begin(), roots.end(), [](const S& p, const S& q) {
      if (p.magnitude() != q.magnitude()) return p.magnitude() < q.magnitude();
      return p.to_complex().real() < q.to_complex().real();
    });
    t.gamma = roots.front();
  } else if (!Phi.b(-3, 4).is_zero()) {
    t.alpha = -a / Phi.b(-3, 4);
  } else if (!Phi.b(-2, 4).is_zero()) {
    t.beta = a / Phi.b(-2, 4);
  } else {
    fail(ErrorKind::IrrationalRoot, "a_{-3,4} needs sqrt(" + (b * b + a).str() + "); use the float backend");
  }
  Cocycle<S> out = act(t, Phi);
  if (!out.a(-3, 4).is_zero()) fail(ErrorKind::NormalityBroken, "kill_order4 left a nonzero a_{-3,4}");
  return {out, t};
}

template <class S>
struct Bifibrated {
  BiSeries<S> h1, h2;
  Cocycle<S> raw;
  NormalizeResult<S> reduced;
};

// Neighborhood with two fibrations dh1 = 0, dh2 = 0 tangent along x = y,
// built from a germ phi(u) = u + c u^2 + ... (k = 1).
template <class S>
Bifibrated<S> bifibrated_example(const USeries<S>& phi, int N) {
  if (!phi[0].is_zero() || phi[1] != S(1)) fail(ErrorKind::BadInput, "germ must be u + c u^2 + ...");
  if (phi.order() < 2 || phi[2].is_zero()) fail(ErrorKind::DegenerateTangency, "c = 0: tangency is not simple");
  using B = BiSeries<S>;
  int M = std::min(N, phi.order() - 1);
  // vphi(y) = phi(y)/y - 1
  USeries<S> v(M);
  for (int k = 0; k <= M; ++k) v.c[k] = k + 1 <= phi.order() ? phi[k + 1] : S(0);
  v.c[0] = S(0);
  USeries<S> yv = USeries<S>::identity(M) * v.derivative();
  B x = B::x(N), y = B::y(N);
  B h1 = x;
  B h2 = x + x * B::from_useries(v, N) + (x - y) * B::from_useries(yv, N);
  h2 = h2.truncated(M);
  B first = h1.reciprocal();
  B second = h2.reciprocal() - x.truncated(M).reciprocal();
  Cocycle<S> raw{first.truncated(M), second};
  return {h1, h2, raw, reduce_to_normal(raw)};
}

struct CapStats {
  std::map<std::string, int> histogram;
  int sampled = 0;
  int skipped = 0;  // a-part vanishes after kill_order4
  int max_isolated = 0;
  std::string special_row;  // class of the special covering, run alongside
};

// Run detect on random normal forms and record the classification counts.
template <class S>
CapStats count_property_sample(std::uint64_t seed, int trials, int N) {
  Sampler s(seed);
  CapStats st;
  st.special_row = class_name(detect(special_covering<S>(N), N).classification);
  while (st.sampled < trials) {
    Cocycle<S> phi = random_normal<S>(s, N, 0.5);
    // post-kill a-residual, judged in floating point so the square root exists
    auto killed = kill_order4(phi.template map<Float>([](const S& v) { return Float(v.to_complex()); })).first;
    bool nonzero = false;
    killed.a_part().for_each([&](int, int, const Float& v) { nonzero = nonzero || v.magnitude() > 1e-9; });
    if (!nonzero) {
      ++st.skipped;
      continue;
    }
    auto rep = detect(phi, N, seed + st.sampled);
    ++st.sampled;
    st.histogram[class_name(rep.classification)] += 1;
    if (rep.classification != FibrationClass::Undetermined)
      st.max_isolated = std::max<int>(st.max_isolated, rep.witnesses.size());
  }
  return st;
}

}  // namespace plusone
