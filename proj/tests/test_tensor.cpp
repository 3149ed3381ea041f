#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pwlab/tensor.hpp"

using namespace pwlab;

namespace {
ChartPtr chart2() { return Chart::make(2); }
ChartPtr chart3() { return Chart::make(3); }
Scalar S(const std::string& s, const ChartPtr& c) { return parse_scalar(s, *c); }
}  // namespace

TEST_CASE("contract examples") {
  auto c3 = chart3();
  // delta trace = 3
  TensorField d = TensorField::delta(c3, true);
  TensorField tr = contract(d, 0, 1);
  CHECK(tr.rank() == 0);
  CHECK(tr.at({}) == Scalar(3));

  // Gamma_A^C_C = 0 for the E2-style connection (only Gamma_1^2_1 = x2)
  auto c2 = chart2();
  TensorField G(c2, {Space::MDown, Space::MUp, Space::MDown});
  G.at({0, 1, 0}) = S("x2", c2);
  CHECK(contract(G, 1, 2).is_zero());

  // v (x) alpha with v = (1,0), alpha = (0,1)
  TensorField v(c2, {Space::MUp}), a(c2, {Space::MDown});
  v.at({0}) = Scalar(1);
  a.at({1}) = Scalar(1);
  CHECK(contract(outer(v, a), 0, 1).at({}).is_zero());

  CHECK_THROWS_AS(contract(outer(v, v), 0, 1), Error);
}

TEST_CASE("symmetrize examples") {
  auto c2 = chart2();
  TensorField sym(c2, {Space::MDown, Space::MDown});
  sym.at({0, 0}) = S("x1", c2);
  sym.at({0, 1}) = S("x2", c2);
  sym.at({1, 0}) = S("x2", c2);
  sym.at({1, 1}) = Scalar(3);
  CHECK(antisym2(sym, 0, 1).is_zero());
  CHECK(sym2(sym, 0, 1) == sym);

  // antisym of e1 (x) e2 -> 1/2(e1 e2 - e2 e1)
  TensorField e1(c2, {Space::MUp}), e2(c2, {Space::MUp});
  e1.at({0}) = Scalar(1);
  e2.at({1}) = Scalar(1);
  TensorField w = antisym2(outer(e1, e2), 0, 1);
  CHECK(w.at({0, 1}) == Scalar(Rat(1, 2)));
  CHECK(w.at({1, 0}) == Scalar(Rat(-1, 2)));
  // idempotent
  CHECK(antisym2(w, 0, 1) == w);
}

TEST_CASE("grade_in_p") {
  auto c2 = chart2();
  TensorField t = TensorField::scalar(c2, S("x1*p1 + x2", c2));
  CHECK(grade_in_p(t, 1) == TensorField::scalar(c2, S("x1*p1", c2)));
  CHECK(grade_in_p(t, 0) == TensorField::scalar(c2, S("x2", c2)));
  CHECK(grade_in_p(TensorField::scalar(c2, S("p1*p2", c2)), 1).is_zero());

  // sum over grades reproduces the tensor
  TensorField big = TensorField::scalar(c2, S("x1*p1^2*p2 + x2*p1 + 7", c2));
  TensorField acc(c2, {});
  for (int d = 0; d <= max_p_degree(big); ++d) acc = acc + grade_in_p(big, d);
  CHECK(acc == big);

  CHECK_THROWS_AS(grade_in_p(TensorField::scalar(c2, S("1/p1", c2)), 0), Error);
}

TEST_CASE("contract of antisymmetrized pair against symmetric tensor vanishes") {
  auto c2 = chart2();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-4, 4);
  TensorField s(c2, {Space::MUp, Space::MUp});
  TensorField t(c2, {Space::MDown, Space::MDown, Space::MUp});
  for (size_t i = 0; i < t.size(); ++i) t.flat(i) = Scalar(coef(rng));
  s.at({0, 0}) = Scalar(coef(rng));
  s.at({1, 1}) = Scalar(coef(rng));
  s.at({0, 1}) = Scalar(3);
  s.at({1, 0}) = Scalar(3);
  TensorField anti = symmetrize(t, {0, 1}, true);
  TensorField res = contract(contract(outer(anti, s), 1, 3), 0, 2);
  CHECK(res.is_zero());
}

TEST_CASE("levi-civita symbols") {
  auto c3 = chart3();
  TensorField eps = levi_civita_down(c3), epsu = levi_civita_up(c3);
  CHECK(eps.at({0, 1, 2}) == Scalar(1));
  CHECK(eps.at({1, 0, 2}) == Scalar(-1));
  // eps_{ABC} eps^{ABC} = n!
  TensorField full = contract(contract(contract(outer(eps, epsu), 2, 5), 1, 3), 0, 1);
  CHECK(full.at({}) == Scalar(6));
}

TEST_CASE("nonzero component printing") {
  auto c2 = chart2();
  TensorField P(c2, {Space::MDown, Space::MDown});
  P.at({0, 0}) = Scalar(1);
  CHECK(tensor_nonzero_str(P, "P") == "P[1,1] = 1");
}
