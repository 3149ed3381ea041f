#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pwlab/solutions.hpp"

using namespace pwlab;

namespace {

Scalar S(const std::string& s, const ChartPtr& c) { return parse_scalar(s, *c); }

// n=2, Gamma_1^2_1 = x2
AffineConnection E2() {
  auto c = Chart::make(2);
  TensorField g(c, {Space::MDown, Space::MUp, Space::MDown});
  g.at({0, 1, 0}) = S("x2", c);
  return make_connection(c, g);
}

// n=2, Gamma_1^2_1 = x2^2 (nonzero Cotton)
AffineConnection E2c() {
  auto c = Chart::make(2);
  TensorField g(c, {Space::MDown, Space::MUp, Space::MDown});
  g.at({0, 1, 0}) = S("x2^2", c);
  return make_connection(c, g);
}

// n=3, Gamma_1^2_1 = x3 (Ricci-flat, not flat)
AffineConnection E3() {
  auto c = Chart::make(3);
  TensorField g(c, {Space::MDown, Space::MUp, Space::MDown});
  g.at({0, 1, 0}) = S("x3", c);
  return make_connection(c, g);
}

TensorField oneform(const AffineConnection& D, const std::vector<std::string>& comps) {
  TensorField u(D.chart, {Space::MDown});
  for (int A = 0; A < D.n; ++A) u.at({A}) = S(comps[A], D.chart);
  return u;
}

TensorField vec(const AffineConnection& D, const std::vector<std::string>& comps) {
  TensorField u(D.chart, {Space::MUp});
  for (int A = 0; A < D.n; ++A) u.at({A}) = S(comps[A], D.chart);
  return u;
}

TensorField random_upsilon(const AffineConnection& D, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, D.n - 1);
  TensorField u(D.chart, {Space::MDown});
  for (int A = 0; A < D.n; ++A) {
    Poly p(coef(rng));
    p += Poly::var(D.chart->xvar(pick(rng))) * Poly(Coeff(coef(rng)));
    p += Poly::var(D.chart->xvar(pick(rng)), 2) * Poly(Coeff(coef(rng)));
    u.at({A}) = Scalar(p);
  }
  return u;
}

}  // namespace

TEST_CASE("curvature on the worked connections") {
  for (int n : {2, 3}) {
    auto D = flat_connection(Chart::make(n));
    auto c = curvature(D);
    CHECK(c.riemann.is_zero());
    CHECK(c.ricci.is_zero());
    CHECK(c.schouten.is_zero());
  }
  // E2: R_12^2_1 = -1, Ric_11 = 1, P_11 = 1, everything else 0
  {
    auto D = E2();
    auto c = curvature(D);
    CHECK(c.riemann.at({0, 1, 1, 0}) == Scalar(-1));
    CHECK(c.riemann.at({1, 0, 1, 0}) == Scalar(1));
    int nonzero = 0;
    c.riemann.for_each([&](const std::vector<int>&, const Scalar& v) {
      if (!v.is_zero()) ++nonzero;
    });
    CHECK(nonzero == 2);
    CHECK(c.ricci.at({0, 0}) == Scalar(1));
    CHECK(c.schouten.at({0, 0}) == Scalar(1));
  }
  // E3: R_13^2_1 = -1 yet Ric = 0
  {
    auto D = E3();
    auto c = curvature(D);
    CHECK(c.riemann.at({0, 2, 1, 0}) == Scalar(-1));
    CHECK_FALSE(c.riemann.is_zero());
    CHECK(c.ricci.is_zero());
    CHECK(c.schouten.is_zero());
  }
  CHECK_THROWS_AS(curvature(flat_connection(Chart::make(1))), Error);
}

TEST_CASE("Bianchi and antisymmetry hold for the curvature tensor") {
  for (auto D : {E2(), E2c(), E3()}) {
    auto c = curvature(D);
    CHECK(symmetrize(c.riemann, {0, 1}, false).is_zero());
    // first Bianchi: antisymmetrization over the three down slots kills R
    CHECK(symmetrize(permute(c.riemann, {0, 1, 3, 2}), {0, 1, 2}, true).is_zero());
  }
}

TEST_CASE("projective Weyl and Cotton") {
  {
    auto wc = projective_weyl_cotton(flat_connection(Chart::make(3)));
    CHECK(wc.weyl.is_zero());
    CHECK(wc.cotton.is_zero());
  }
  {
    auto wc = projective_weyl_cotton(E2());
    CHECK(wc.weyl.is_zero());  // identically for n = 2
    CHECK(wc.cotton.is_zero());  // P constant here
  }
  {
    auto wc = projective_weyl_cotton(E2c());
    CHECK(wc.weyl.is_zero());
    CHECK_FALSE(wc.cotton.is_zero());
    // Y_CAB = 2 D_[A P_B]C with P_11 = 2*x2: Y_112 = D_1 P_21 - D_2 P_11 = -2
    CHECK(wc.cotton.at({0, 0, 1}) == Scalar(-2));
  }
  {
    auto D = E3();
    auto wc = projective_weyl_cotton(D);
    CHECK(wc.weyl == curvature(D).riemann);  // Ric = 0 forces W = R
    CHECK(wc.cotton.is_zero());
    CHECK(contract(wc.weyl, 0, 2).is_zero());
    CHECK(contract(wc.weyl, 1, 2).is_zero());
    CHECK(contract(wc.weyl, 2, 3).is_zero());
  }
}

TEST_CASE("projective change and Schouten transformation law") {
  std::mt19937 rng(21);
  for (auto D : {E2(), E3()}) {
    TensorField zero(D.chart, {Space::MDown});
    CHECK(projective_change(D, zero).gamma == D.gamma);
    // exact Upsilon = d phi keeps the connection special and obeys the stated law
    for (const char* phis : {"x1*x2", "x1^2 - 3*x2"}) {
      Scalar phi = S(phis, D.chart);
      TensorField ups(D.chart, {Space::MDown});
      for (int A = 0; A < D.n; ++A) ups.at({A}) = phi.partial(D.chart->xvar(A));
      auto Dh = projective_change(D, ups);
      // Phat_AB = P_AB + Ups_A Ups_B - D_A Ups_B
      TensorField expected = curvature(D).schouten + outer(ups, ups) - covd(D, ups);
      CHECK(curvature(Dh).schouten == expected);
      CHECK(projective_weyl_cotton(Dh).weyl == projective_weyl_cotton(D).weyl);
    }
    // arbitrary polynomial Upsilon: W stays invariant through the general trace-free part
    for (int trial = 0; trial < 3; ++trial) {
      TensorField ups = random_upsilon(D, rng);
      auto Dh = projective_change(D, ups);
      CHECK(symmetrize(Dh.gamma, {0, 2}, true).is_zero());
      CHECK(projective_weyl_any(Dh) == projective_weyl_any(D));
      if (is_special(D)) CHECK(projective_weyl_any(D) == projective_weyl_cotton(D).weyl);
      // symmetric part of the transformation law holds for any Upsilon
      TensorField beta = covd(D, ups) - outer(ups, ups);
      TensorField Ph = curvature(Dh).schouten;
      CHECK(sym2(Ph, 0, 1) == sym2(curvature(D).schouten - beta, 0, 1));
      CHECK(thomas_parameters(Dh) == thomas_parameters(D));
    }
  }
  // flat D, Ups = dx1: Gammahat_1^1_1 = 2, Gammahat_1^2_2 = Gammahat_2^2_1 = 1
  {
    auto D = flat_connection(Chart::make(2));
    auto Dh = projective_change(D, oneform(D, {"1", "0"}));
    CHECK(Dh.gamma.at({0, 0, 0}) == Scalar(2));
    CHECK(Dh.gamma.at({0, 1, 1}) == Scalar(1));
    CHECK(Dh.gamma.at({1, 1, 0}) == Scalar(1));
    CHECK(Dh.gamma.at({1, 0, 0}) == Scalar(0));
  }
}

TEST_CASE("special connections and Thomas parameters") {
  {
    auto D = E2();
    CHECK(is_special(D));
    auto [ups, Dh] = special_part(D);
    CHECK(ups.is_zero());
    CHECK(Dh.gamma == D.gamma);
  }
  // trace part Gamma_1^1_1 = x2 on n=2: Upsilon_1 = -x2/3, result special
  {
    auto chart = Chart::make(2);
    TensorField g(chart, {Space::MDown, Space::MUp, Space::MDown});
    g.at({0, 0, 0}) = S("x2", chart);
    auto D = make_connection(chart, g);
    CHECK_FALSE(is_special(D));
    auto [ups, Dh] = special_part(D);
    CHECK(ups.at({0}) == S("-x2/3", chart));
    CHECK(ups.at({1}).is_zero());
    CHECK(is_special(Dh));
    CHECK(covd(Dh, Dh.volume).is_zero());
    CHECK(contract(Dh.gamma, 1, 2).is_zero());
    CHECK(thomas_parameters(D) == Dh.gamma);
    TensorField pi = thomas_parameters(D);
    CHECK(pi.at({0, 0, 0}) == S("x2/3", chart));
    CHECK(pi.at({0, 1, 1}) == S("-x2/3", chart));
    CHECK(pi.at({1, 1, 0}) == S("-x2/3", chart));
  }
  CHECK(thomas_parameters(E3()) == E3().gamma);
  CHECK_THROWS_AS(projective_weyl_cotton(projective_change(
                      E2(), oneform(E2(), {"x2", "0"}))),
                  Error);  // non-special: Schouten asymmetric
}

TEST_CASE("density covariant derivative makes the projective volume parallel") {
  std::mt19937 rng(8);
  for (auto D : {E2(), E3()}) {
    TensorField eps = levi_civita_down(D.chart, D.n + 1);
    CHECK(covd(D, eps).is_zero());
    auto Dh = projective_change(D, random_upsilon(D, rng));
    CHECK(covd(Dh, eps).is_zero());
  }
}

TEST_CASE("solution residuals: stated examples") {
  // flat D, xi = x^A: euler residual 0
  {
    auto D = flat_connection(Chart::make(2));
    auto s = make_solution(SolKind::EulerField, vec(D, {"x1", "x2"}));
    CHECK(solution_residual(D, s).all_zero());
  }
  // flat D, alpha = dx1: killing residual 0
  {
    auto D = flat_connection(Chart::make(2));
    auto s = make_solution(SolKind::KillingOneForm, oneform(D, {"1", "0"}));
    CHECK(solution_residual(D, s).all_zero());
  }
  // E2: v = d/dx1 is an affine symmetry (Gamma is x1-independent), hence projective too
  {
    auto D = E2();
    auto aff = make_solution(SolKind::AffineSymmetry, vec(D, {"1", "0"}));
    CHECK(solution_residual(D, aff).main.is_zero());
    auto proj = make_solution(SolKind::ProjectiveSymmetry, vec(D, {"1", "0"}));
    CHECK(solution_residual(D, proj).main.is_zero());
    // v = d/dx2 does not preserve the projective structure
    auto bad = make_solution(SolKind::ProjectiveSymmetry, vec(D, {"0", "1"}));
    CHECK_FALSE(solution_residual(D, bad).main.is_zero());
  }
  // E2 Ricci-flat scales: x2 solves, 1 and x1*x2 do not
  {
    auto D = E2();
    auto good = make_solution(SolKind::RicciFlatScale,
                              TensorField::scalar(D.chart, S("x2", D.chart)));
    CHECK(solution_residual(D, good).all_zero());
    auto bad2 = make_solution(SolKind::RicciFlatScale,
                              TensorField::scalar(D.chart, S("x1*x2", D.chart)));
    CHECK_FALSE(solution_residual(D, bad2).main.is_zero());
    auto bad = make_solution(SolKind::RicciFlatScale, TensorField::scalar(D.chart, Scalar(1)));
    CHECK_FALSE(solution_residual(D, bad).main.is_zero());
  }
  // E3: constant xi along x2 is an euler field, Weyl integrability included
  {
    auto D = E3();
    auto s = make_solution(SolKind::EulerField, vec(D, {"0", "1", "0"}));
    CHECK(solution_residual(D, s).all_zero());
  }
  // weight mismatch rejected
  {
    auto D = E2();
    ProjectiveSolution s{SolKind::EulerField, vec(D, {"x1", "x2"}), std::nullopt};
    CHECK_THROWS_AS(solution_residual(D, s), Error);
  }
}

TEST_CASE("prolongation closure") {
  // flat D, v = x1 d/dx1 (n=2): psi = 1/2, phi = diag(1/2, -1/2), beta = 0
  {
    auto D = flat_connection(Chart::make(2));
    auto s = prolong(D, make_solution(SolKind::ProjectiveSymmetry, vec(D, {"x1", "0"})));
    REQUIRE(s.prolongation.has_value());
    CHECK(s.prolongation->psi->at({}) == S("1/2", D.chart));
    CHECK(s.prolongation->phi->at({0, 0}) == S("1/2", D.chart));
    CHECK(s.prolongation->phi->at({1, 1}) == S("-1/2", D.chart));
    CHECK(s.prolongation->beta->is_zero());
    for (const auto& [name, r] : prolonged_system_residuals(D, s)) {
      INFO(name);
      CHECK(r.is_zero());
    }
  }
  // flat D, w^12 = 1: nu = 0
  {
    auto D = flat_connection(Chart::make(2));
    TensorField w(D.chart, {Space::MUp, Space::MUp});
    w.at({0, 1}) = Scalar(1);
    w.at({1, 0}) = Scalar(-1);
    auto s = prolong(D, make_solution(SolKind::Bivector, w));
    CHECK(s.prolongation->nu->is_zero());
    for (const auto& [name, r] : prolonged_system_residuals(D, s)) {
      INFO(name);
      CHECK(r.is_zero());
    }
  }
  // flat D, constant v: phi = psi = beta = 0
  {
    auto D = flat_connection(Chart::make(2));
    auto s = prolong(D, make_solution(SolKind::ProjectiveSymmetry, vec(D, {"1", "0"})));
    CHECK(s.prolongation->phi->is_zero());
    CHECK(s.prolongation->psi->is_zero());
    CHECK(s.prolongation->beta->is_zero());
  }
  // curved fixtures
  {
    auto D = E2c();
    auto s = prolong(D, make_solution(SolKind::AffineSymmetry, vec(D, {"1", "0"})));
    for (const auto& [name, r] : prolonged_system_residuals(D, s)) {
      INFO(name);
      CHECK(r.is_zero());
    }
    auto sp = prolong(D, make_solution(SolKind::ProjectiveSymmetry, vec(D, {"1", "0"})));
    for (const auto& [name, r] : prolonged_system_residuals(D, sp)) {
      INFO(name);
      CHECK(r.is_zero());
    }
  }
  {
    auto D = E2();
    TensorField w(D.chart, {Space::MUp, Space::MUp});
    w.at({0, 1}) = S("x2", D.chart);
    w.at({1, 0}) = S("-x2", D.chart);
    auto s = prolong(D, make_solution(SolKind::Bivector, w));
    for (const auto& [name, r] : prolonged_system_residuals(D, s)) {
      INFO(name);
      CHECK(r.is_zero());
    }
  }
  // prolong rejects non-solutions
  CHECK_THROWS_AS(prolong(E2(), make_solution(SolKind::ProjectiveSymmetry, vec(E2(), {"0", "1"}))),
                  Error);
}

TEST_CASE("low-dimensional dualities") {
  // n=2 flat: xi = x^A -> alpha Killing, and back
  {
    auto D = flat_connection(Chart::make(2));
    auto xi = make_solution(SolKind::EulerField, vec(D, {"x1", "x2"}));
    auto a = dualize_lowdim(D, xi);
    CHECK(a.kind == SolKind::KillingOneForm);
    CHECK(solution_residual(D, a).all_zero());
    CHECK(dualize_lowdim(D, a).data == xi.data);
  }
  // n=2 flat: w^12 = 1 -> sigma = 1
  {
    auto D = flat_connection(Chart::make(2));
    TensorField w(D.chart, {Space::MUp, Space::MUp});
    w.at({0, 1}) = Scalar(1);
    w.at({1, 0}) = Scalar(-1);
    auto s = dualize_lowdim(D, make_solution(SolKind::Bivector, w));
    CHECK(s.kind == SolKind::RicciFlatScale);
    CHECK(s.data.at({}) == Scalar(1));
    CHECK(solution_residual(D, s).all_zero());
    CHECK(dualize_lowdim(D, s).data == w);
  }
  // n=2 E2: w = x2 * eps corresponds to the Ricci-flat scale x2
  {
    auto D = E2();
    TensorField w(D.chart, {Space::MUp, Space::MUp});
    w.at({0, 1}) = S("x2", D.chart);
    w.at({1, 0}) = S("-x2", D.chart);
    auto sw = make_solution(SolKind::Bivector, w);
    CHECK(solution_residual(D, sw).all_zero());
    auto s = dualize_lowdim(D, sw);
    CHECK(s.data.at({}) == S("x2", D.chart));
    CHECK(solution_residual(D, s).all_zero());
  }
  // n=3 flat: w^12 = 1 -> alpha = dx3
  {
    auto D = flat_connection(Chart::make(3));
    TensorField w(D.chart, {Space::MUp, Space::MUp});
    w.at({0, 1}) = Scalar(1);
    w.at({1, 0}) = Scalar(-1);
    auto a = dualize_lowdim(D, make_solution(SolKind::Bivector, w));
    CHECK(a.kind == SolKind::KillingOneForm);
    CHECK(a.data.at({2}) == Scalar(1));
    CHECK(a.data.at({0}).is_zero());
    CHECK(solution_residual(D, a).all_zero());
    CHECK(dualize_lowdim(D, a).data == w);
  }
  CHECK_THROWS_AS(dualize_lowdim(flat_connection(Chart::make(4)),
                                 make_solution(SolKind::RicciFlatScale,
                                               TensorField::scalar(Chart::make(4), Scalar(1)))),
                  Error);
}

TEST_CASE("Ricci-flat scale determines a Ricci-flat connection") {
  // Upsilon = -(D sigma)/sigma moves E2 to the connection with P = 0, exactly
  auto D = E2();
  Scalar sigma = S("x2", D.chart);
  TensorField ups(D.chart, {Space::MDown});
  for (int A = 0; A < D.n; ++A) ups.at({A}) = -sigma.partial(D.chart->xvar(A)) / sigma;
  auto Dh = projective_change(D, ups);
  CHECK(curvature(Dh).schouten.is_zero());
}

TEST_CASE("polynomial solver finds the known solution spaces") {
  {
    auto D = flat_connection(Chart::make(2));
    auto sols = solve_polynomial(D, SolKind::EulerField, 1);
    CHECK(sols.size() == 3);  // two constants + the radial field
    for (auto& s : sols) CHECK(solution_residual(D, s).main.is_zero());
  }
  {
    auto D = E2();
    auto sols = solve_polynomial(D, SolKind::RicciFlatScale, 2);
    REQUIRE(sols.size() == 1);  // multiples of x2 only
    CHECK(poly_monic(sols[0].data.at({}).num()) == Poly::var(Chart::make(2)->xvar(1)));
    for (auto& s : sols) CHECK(solution_residual(D, s).all_zero());
  }
  {
    auto D = E3();
    auto sols = solve_polynomial(D, SolKind::EulerField, 2, true);
    CHECK(!sols.empty());
    for (auto& s : sols) CHECK(solution_residual(D, s).all_zero());
  }
}
