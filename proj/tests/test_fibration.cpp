#include <gtest/gtest.h>

#include <set>

#include "plusone/fibration.hpp"

using namespace plusone;
using C = Cocycle<Exact>;
using G = GroupElement<Exact>;
using W = Triple<Exact>;

namespace {

constexpr int N = 8;

std::set<std::string> keys(const std::vector<W>& ws) {
  std::set<std::string> s;
  for (auto& w : ws) s.insert(w[0].str() + "," + w[1].str() + "," + w[2].str());
  return s;
}

W tw(long a, long b, long g) { return {Exact(a), Exact(b), Exact(g)}; }

}  // namespace

TEST(Fibration, GroebnerBasics) {
  using P = MPoly<Exact>;
  P a = P::var(0), b = P::var(1), g = P::var(2);
  // a - g, b^2 - 1, g^2 - g: four points
  auto gb = groebner<Exact>({a - g, b * b - P(1), g * g - g});
  ASSERT_TRUE(gb);
  auto sol = solve_basis(*gb);
  EXPECT_EQ(sol.kind, SolveResult<Exact>::Finite);
  EXPECT_EQ(sol.points.size(), 4u);
  for (auto& p : sol.points) {
    EXPECT_EQ(p[0], p[2]);
    EXPECT_EQ(p[1] * p[1], Exact(1));
  }
  auto inc = groebner<Exact>({a * b - P(1), a, g});
  ASSERT_TRUE(inc);
  EXPECT_EQ(solve_basis(*inc).kind, SolveResult<Exact>::Empty);
  auto pos = groebner<Exact>({a - b});
  EXPECT_EQ(solve_basis(*pos).kind, SolveResult<Exact>::Positive);
  // g^2 = 2 has no rational point
  auto irr = groebner<Exact>({a, b, g * g - P(2)});
  EXPECT_FALSE(solve_basis(*irr).complete);
}

TEST(Fibration, SpecialCoveringHasTwo) {
  auto rep = detect(special_covering<Exact>(N), N);
  EXPECT_EQ(rep.classification, FibrationClass::Two);
  EXPECT_EQ(keys(rep.witnesses), keys({tw(0, 0, 0), tw(0, 0, 1)}));
}

TEST(Fibration, WorkedExamples) {
  EXPECT_EQ(detect(example_no_fibration<Exact>(N), N).classification, FibrationClass::None);
  auto one = detect(example_one_fibration<Exact>(N), N);
  EXPECT_EQ(one.classification, FibrationClass::One);
  EXPECT_EQ(keys(one.witnesses), keys({tw(0, 0, 0)}));
  EXPECT_EQ(detect(C::linear(N), N).classification, FibrationClass::ManyOrLinear);
}

TEST(Fibration, DeterminantCondition) {
  // b_{-3,5}^2 = b_{-2,5} b_{-4,5}: the order-5 system is rank one, a line
  // of witnesses survives at order 5
  BiSeries<Exact> a(N), b(N);
  b.add(-2, 5, 1);
  b.add(-3, 5, 1);
  b.add(-4, 5, 1);
  auto rep = detect(C::from_deviation(a, b), 5);
  EXPECT_EQ(rep.classification, FibrationClass::ManyOrLinear);
  EXPECT_EQ(detect(C::from_deviation(a, b), N).classification, FibrationClass::ManyOrLinear);
}

TEST(Fibration, TruncationTooLow) {
  try {
    detect(special_covering<Exact>(N), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationTooLow);
  }
}

TEST(Fibration, WitnessesTransformWithAction) {
  // witness w of Phi maps to ((w_a - a)/t, (w_b - b)/t, (w_g - g)/t^2) for act(t, Phi)
  Sampler s(77);
  C sc = special_covering<Exact>(N);
  auto base = detect(sc, N);
  for (int k = 0; k < 3; ++k) {
    G t = random_element<Exact>(s);
    auto rep = detect(act(t, sc), N);
    EXPECT_EQ(rep.classification, FibrationClass::Two);
    std::vector<W> moved;
    for (auto& w : base.witnesses)
      moved.push_back({(w[0] - t.alpha) / t.theta, (w[1] - t.beta) / t.theta, (w[2] - t.gamma) / (t.theta * t.theta)});
    EXPECT_EQ(keys(rep.witnesses), keys(moved));
  }
}

TEST(Fibration, KillOrder4) {
  auto [p0, t0] = kill_order4(C::linear(N));
  EXPECT_EQ(p0, C::linear(N));
  EXPECT_EQ(t0, G::identity());
  // a-part 4 y^4/x^3: gamma^2 = 4
  BiSeries<Exact> a(N), b(N);
  a.add(-3, 4, 4);
  auto [p1, t1] = kill_order4(C::from_deviation(a, b));
  EXPECT_EQ(t1.gamma * t1.gamma, Exact(4));
  EXPECT_TRUE(p1.a(-3, 4).is_zero());
  // special covering: both gamma = 0 and gamma = 1 work
  C sc = special_covering<Exact>(N);
  EXPECT_TRUE(act(G{0, 0, 1, 1}, sc).a(-3, 4).is_zero());
  EXPECT_EQ(kill_order4(sc).second, G::identity());
  // non-square discriminant falls back to the linear direction
  BiSeries<Exact> a2(N), b2(N);
  a2.add(-3, 4, 2);
  b2.add(-3, 4, 1);
  auto [p2, t2] = kill_order4(C::from_deviation(a2, b2));
  EXPECT_TRUE(p2.a(-3, 4).is_zero());
  EXPECT_EQ(t2.gamma, Exact(0));
  BiSeries<Exact> a3(N), b3(N);
  a3.add(-3, 4, 2);
  try {
    kill_order4(C::from_deviation(a3, b3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IrrationalRoot);
  }
  // float backend takes the square root
  auto [pf, tf] = kill_order4(C::from_deviation(a3, b3).map<Float>([](const Exact& v) { return Float(v); }));
  EXPECT_LT(pf.a(-3, 4).magnitude(), 1e-12);
  EXPECT_NEAR(std::abs(tf.gamma.to_complex()), std::sqrt(2.0), 1e-12);
}

TEST(Fibration, BifibratedExamples) {
  using U = USeries<Exact>;
  int M = 9;
  U u = U::identity(M);
  U quad = u + u * u;
  auto r1 = bifibrated_example(quad, N);
  EXPECT_TRUE(r1.raw.is_prenormal());
  EXPECT_EQ(r1.raw.second.coeff(-1, 1), Exact(-2));
  auto rep1 = detect(r1.reduced.normal, r1.reduced.normal.order());
  EXPECT_EQ(rep1.classification, FibrationClass::Two);
  U geo = u * (U::constant(1, M) - u).inv();
  auto r2 = bifibrated_example(geo, N);
  EXPECT_EQ(detect(r2.reduced.normal, r2.reduced.normal.order()).classification, FibrationClass::Two);
  try {
    bifibrated_example(u, N);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateTangency);
  }
}

TEST(Fibration, FloatBackend) {
  auto toF = [](const Exact& v) { return Float(v); };
  auto rep = detect(special_covering<Exact>(N).map<Float>(toF), N);
  EXPECT_EQ(rep.classification, FibrationClass::Two);
  ASSERT_EQ(rep.witnesses.size(), 2u);
  EXPECT_LT(rep.witnesses[0][2].magnitude(), 1e-8);
  EXPECT_LT((rep.witnesses[1][2] - Float(1)).magnitude(), 1e-8);
  EXPECT_EQ(detect(example_no_fibration<Exact>(N).map<Float>(toF), N).classification, FibrationClass::None);
}

TEST(Fibration, CapPropertySmallSample) {
  auto st = count_property_sample<Exact>(5, 10, 7);
  EXPECT_EQ(st.sampled, 10);
  EXPECT_LE(st.max_isolated, 2);
}
