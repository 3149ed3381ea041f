#include <catch2/catch_amalgamated.hpp>

#include "pwlab/einstein.hpp"

using namespace pwlab;

namespace {

Scalar S(const std::string& s, const ChartPtr& c) { return parse_scalar(s, *c); }

AffineConnection E2() {
  auto c = Chart::make(2);
  TensorField g(c, {Space::MDown, Space::MUp, Space::MDown});
  g.at({0, 1, 0}) = S("x2", c);
  return make_connection(c, g);
}
AffineConnection E3() {
  auto c = Chart::make(3);
  TensorField g(c, {Space::MDown, Space::MUp, Space::MDown});
  g.at({0, 1, 0}) = S("x3", c);
  return make_connection(c, g);
}

ProjectiveSolution euler(const AffineConnection& D, const std::vector<std::string>& comps) {
  TensorField u(D.chart, {Space::MUp});
  for (int A = 0; A < D.n; ++A) u.at({A}) = S(comps[A], D.chart);
  return make_solution(SolKind::EulerField, std::move(u));
}
ProjectiveSolution scale(const AffineConnection& D, const std::string& s) {
  return make_solution(SolKind::RicciFlatScale, TensorField::scalar(D.chart, S(s, D.chart)));
}

}  // namespace

TEST_CASE("aes residual on stated examples") {
  {
    PWGeometry P(flat_connection(Chart::make(2)));
    CHECK(aes_residual(P, Scalar(1)).is_zero());
    CHECK(aes_residual(P, S("x1*p1 + x2*p2", P.chart())).is_zero());
    // fiber-quadratic scales are not Einstein
    CHECK_FALSE(aes_residual(P, S("p1^2", P.chart())).is_zero());
  }
  {
    PWGeometry P(E2());
    TensorField r = aes_residual(P, Scalar(1));
    CHECK(r == P.intrinsic().schouten);  // trace-free already
    CHECK_FALSE(r.is_zero());
  }
}

TEST_CASE("lift of Ricci-flat scales") {
  // E3 is Ricci-flat: sigma = 1 lifts to the Einstein scale 1, and Pt = 0
  {
    PWGeometry P(E3());
    Scalar lm = lift_minus(P, scale(P.base(), "1"));
    CHECK(lm == Scalar(1));
    CHECK(aes_residual(P, lm).is_zero());
    CHECK(P.intrinsic().schouten.is_zero());
    CHECK(P.lie_k_density(lm, 1) == -lm);
    // further base solutions found by hand: sigma = x1 and x3
    for (const char* s : {"x1", "x3"}) {
      Scalar l = lift_minus(P, scale(P.base(), s));
      CHECK(aes_residual(P, l).is_zero());
    }
  }
  {
    PWGeometry P(flat_connection(Chart::make(2)));
    CHECK(aes_residual(P, lift_minus(P, scale(P.base(), "1"))).is_zero());
  }
  // E2 with sigma = 1 fails the base equation
  {
    PWGeometry P(E2());
    CHECK_THROWS_AS(lift_minus(P, scale(P.base(), "1")), Error);
    // but sigma = x2 is a Ricci-flat scale and lifts to an Einstein scale
    Scalar lm = lift_minus(P, scale(P.base(), "x2"));
    CHECK(aes_residual(P, lm).is_zero());
  }
}

TEST_CASE("lift of Euler-type fields") {
  {
    PWGeometry P(flat_connection(Chart::make(2)));
    Scalar lp = lift_plus(P, euler(P.base(), {"x1", "x2"}));
    CHECK(lp == S("x1*p1 + x2*p2", P.chart()));
    CHECK(aes_residual(P, lp).is_zero());
    CHECK(P.lie_k_density(lp, 1) == lp);
    // constant field
    Scalar lc = lift_plus(P, euler(P.base(), {"1", "0"}));
    CHECK(lc == S("p1", P.chart()));
    CHECK(aes_residual(P, lc).is_zero());
  }
  // E3: the solver provides euler fields with integrability; all lift to Einstein scales
  {
    auto D = E3();
    PWGeometry P(D);
    auto sols = solve_polynomial(D, SolKind::EulerField, 2, true);
    REQUIRE(!sols.empty());
    for (auto& s : sols) {
      Scalar lp = lift_plus(P, s);
      CHECK(aes_residual(P, lp).is_zero());
      auto sum = lift_plus_summands(D, s);
      CHECK(sum.prolonged.is_zero());
      CHECK(sum.weyl.is_zero());
      CHECK(P.lie_k_density(lp, 1) == lp);
    }
  }
  // violated integrability is reported by name: xi = x^A on E3 fails the euler
  // equation itself, while a made-up parallel example passes
  {
    auto D = E3();
    PWGeometry P(D);
    CHECK_THROWS_WITH(lift_plus(P, euler(D, {"x1", "x2", "x3"})),
                      Catch::Matchers::ContainsSubstring("euler"));
  }
}

TEST_CASE("decomposition of Einstein scales") {
  // flat: sigma = 1 + x^A p_A splits into (x p, 1) with xi = x^A
  {
    PWGeometry P(flat_connection(Chart::make(2)));
    Scalar st = S("1 + x1*p1 + x2*p2", P.chart());
    auto dec = decompose_scale(P, st);
    CHECK(dec.plus == S("x1*p1 + x2*p2", P.chart()));
    CHECK(dec.minus == Scalar(1));
    CHECK(dec.xi.data.at({0}) == S("x1", P.chart()));
    CHECK(dec.xi.data.at({1}) == S("x2", P.chart()));
    CHECK(dec.sigma.data.at({}) == Scalar(1));
  }
  // plus-only scale gives an empty minus part
  {
    PWGeometry P(flat_connection(Chart::make(2)));
    auto dec = decompose_scale(P, S("p1", P.chart()));
    CHECK(dec.minus.is_zero());
    CHECK(dec.plus == S("p1", P.chart()));
  }
  // E3, sigma = 1: plus part vanishes
  {
    PWGeometry P(E3());
    auto dec = decompose_scale(P, Scalar(1));
    CHECK(dec.plus.is_zero());
    CHECK(dec.minus == Scalar(1));
  }
  // round trip on E3 with solver-provided base data
  {
    auto D = E3();
    PWGeometry P(D);
    auto xis = solve_polynomial(D, SolKind::EulerField, 2, true);
    REQUIRE(!xis.empty());
    Scalar st = lift_plus(P, xis[0]) + lift_minus(P, scale(D, "x1"));
    auto dec = decompose_scale(P, st);
    CHECK(dec.xi.data == xis[0].data);
    CHECK(dec.sigma.data.at({}) == S("x1", P.chart()));
  }
  // non-Einstein scales are rejected
  {
    PWGeometry P(E2());
    CHECK_THROWS_AS(decompose_scale(P, Scalar(1)), Error);
  }
}

TEST_CASE("trace identity and vertical Hessian for Einstein scales") {
  // the rescaled-Rho trace identity holds on each eigen-summand: the summands
  // define Ricci-flat metrics; a mixed Einstein scale may carry a nonzero
  // Einstein constant and genuinely fails it
  {
    PWGeometry P(flat_connection(Chart::make(3)));
    for (const char* s : {"1", "x1*p1 + x2*p2 + x3*p3", "p2", "x1 + p1"}) {
      Scalar st = S(s, P.chart());
      REQUIRE(aes_residual(P, st).is_zero());
      auto dec = decompose_scale(P, st);
      CHECK(einstein_trace_identity(P, dec.plus).is_zero());
      CHECK(einstein_trace_identity(P, dec.minus).is_zero());
      CHECK(kk_hessian(P, st).is_zero());
    }
    CHECK_FALSE(einstein_trace_identity(P, S("x1 + p1", P.chart())).is_zero());
  }
  {
    PWGeometry P(E3());
    Scalar st = S("1 + p2", P.chart());  // lift of sigma = 1 plus lift of d/dx2
    REQUIRE(aes_residual(P, st).is_zero());
    auto dec = decompose_scale(P, st);
    CHECK(einstein_trace_identity(P, dec.plus).is_zero());
    CHECK(einstein_trace_identity(P, dec.minus).is_zero());
    CHECK(kk_hessian(P, st).is_zero());
  }
}
