// Acceptance suite: every criterion is an exact identity in rational
// arithmetic (tolerance zero). One pass/fail line per criterion; the exit
// code is the number of failed criteria.

#include <iostream>
#include <vector>

#include "pwlab/gallery.hpp"

using namespace pwlab;

namespace {

int failures = 0;

void criterion(int num, const std::string& what, bool ok) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << what << "\n";
  if (!ok) ++failures;
}

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

ProjectiveSolution vecsol(const AffineConnection& D, SolKind k, const std::vector<std::string>& c) {
  TensorField u(D.chart, {Space::MUp});
  for (int A = 0; A < D.n; ++A) u.at({A}) = S(c[A], D.chart);
  return make_solution(k, std::move(u));
}
ProjectiveSolution formsol(const AffineConnection& D, const std::vector<std::string>& c) {
  TensorField u(D.chart, {Space::MDown});
  for (int A = 0; A < D.n; ++A) u.at({A}) = S(c[A], D.chart);
  return make_solution(SolKind::KillingOneForm, std::move(u));
}
ProjectiveSolution bivsol(const AffineConnection& D, const std::string& w12) {
  TensorField w(D.chart, {Space::MUp, Space::MUp});
  w.at({0, 1}) = S(w12, D.chart);
  w.at({1, 0}) = -S(w12, D.chart);
  return make_solution(SolKind::Bivector, std::move(w));
}
ProjectiveSolution scalesol(const AffineConnection& D, const std::string& s) {
  return make_solution(SolKind::RicciFlatScale, TensorField::scalar(D.chart, S(s, D.chart)));
}

}  // namespace

int main() {
  std::vector<AffineConnection> trio = {flat_connection(Chart::make(2)),
                                        flat_connection(Chart::make(3)), E2(), E3()};

  // 1. frame Christoffels and Riemann tensor: closed forms vs brute force
  {
    bool ok = true;
    for (auto& D : trio) {
      PWGeometry P(D);
      ok = ok && P.closed().gamma_frame == frame_christoffels_koszul(P);
      ok = ok && P.closed().gamma_frame == frame_christoffels_intrinsic(P);
      ok = ok && P.closed().riemann_low == P.intrinsic().riemann_low;
    }
    criterion(1, "frame Christoffels and Riemann closed forms equal the Koszul pipeline", ok);
  }

  // 2. curvature dictionary on E2 and E3; E3 Schouten vanishes
  {
    bool ok = true;
    for (auto& D : {E2(), E3()}) {
      PWGeometry P(D);
      ok = ok && P.closed().schouten == P.intrinsic().schouten;
      ok = ok && P.closed().cotton == P.intrinsic().cotton;
      ok = ok && P.closed().weyl_low == P.intrinsic().weyl_low;
    }
    ok = ok && PWGeometry(E3()).intrinsic().schouten.is_zero();
    criterion(2, "curvature dictionary (Weyl, Schouten, Cotton) exact; E3 is Ricci-flat", ok);
  }

  // 3. characterization conditions on every built geometry
  {
    bool ok = true;
    for (auto& D : trio) {
      PWGeometry P(D);
      CliffordModule cm(P.chart());
      for (auto& r : twistor_residual(P, cm, cm.chi())) ok = ok && r.is_zero();
      KReport rep = k_properties(P);
      ok = ok && rep.ck_residual.is_zero() && rep.lie_residual.is_zero() && rep.norm.is_zero();
      SpinorField lie = lie_derivative_spinor(P, cm, P.k_up(), cm.chi());
      SpinorField expect = Scalar(Rat(-(P.n() + 1), 2)) * cm.chi();
      expect.cw = lie.cw;
      ok = ok && lie == expect;
      int n = P.n(), d = P.dim();
      for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
              ok = ok && P.intrinsic().weyl_low.at({n + A, b, c, n + B}).is_zero();
    }
    criterion(3, "twistor spinor, homothety, Lie eigenvalue and vertical Weyl conditions", ok);
  }

  // 4. conformal covariance passes at w = 2 and fails at w in {0,1,3}
  {
    bool ok = true;
    int scales_used = 0;
    auto run = [&](const AffineConnection& D, const std::string& s) {
      CovarianceReport rep = conformal_covariance_check(D, S(s, D.chart));
      bool saw2 = false;
      for (const auto& pw : rep.weights) {
        ok = ok && pw.identity_ok;             // exact predicted discrepancy for every w
        ok = ok && pw.equals_s2g == (pw.w == 2);
        saw2 = saw2 || pw.w == 2;
      }
      ok = ok && saw2;
      ++scales_used;
    };
    run(flat_connection(Chart::make(2)), "1 + x1^2");
    run(flat_connection(Chart::make(2)), "2 + x1^2*x2^2 + x2^4");
    run(E2(), "1 + x1^2");
    run(E3(), "1 + x2^2 + x3^2");
    ok = ok && scales_used >= 2;
    criterion(4, "conformal covariance exact for w = 2 and refuted for w in {0, 1, 3}", ok);
  }

  // 5. Einstein-scale lifts and decomposition round trip on flat and E3
  {
    bool ok = true;
    {
      auto D = flat_connection(Chart::make(3));
      PWGeometry P(D);
      auto xi = vecsol(D, SolKind::EulerField, {"x1", "x2", "x3"});
      auto sg = scalesol(D, "1");
      Scalar lp = lift_plus(P, xi), lm = lift_minus(P, sg);
      ok = ok && aes_residual(P, lp).is_zero() && aes_residual(P, lm).is_zero();
      auto dec = decompose_scale(P, lp + lm);
      ok = ok && dec.xi.data == xi.data && dec.sigma.data.at({}) == sg.data.at({});
    }
    {
      auto D = E3();
      PWGeometry P(D);
      auto xi = vecsol(D, SolKind::EulerField, {"0", "1", "0"});
      auto sg = scalesol(D, "x1");
      Scalar lp = lift_plus(P, xi), lm = lift_minus(P, sg);
      ok = ok && aes_residual(P, lp).is_zero() && aes_residual(P, lm).is_zero();
      auto dec = decompose_scale(P, lp + lm);
      ok = ok && dec.xi.data == xi.data && dec.sigma.data.at({}) == sg.data.at({});
    }
    criterion(5, "Einstein-scale lifts and decomposition recover the base data exactly", ok);
  }

  // 6. the six symmetry lifts and both decomposition modes
  {
    bool ok = true;
    // conformal lifts across the fixtures
    struct CCase { AffineConnection D; ProjectiveSolution v, w, a; };
    {
      auto D = flat_connection(Chart::make(2));
      PWGeometry P(D);
      auto v = vecsol(D, SolKind::ProjectiveSymmetry, {"x1", "0"});
      auto w = bivsol(D, "1");
      auto a = formsol(D, {"1", "0"});
      for (auto& sol : {v, w, a})
        ok = ok && ck_data(P, lift_symmetry(P, sol, LiftMode::Conformal)).conformal_residual.is_zero();
      TensorField sum = lift_symmetry(P, v, LiftMode::Conformal) +
                        lift_symmetry(P, w, LiftMode::Conformal) +
                        lift_symmetry(P, a, LiftMode::Conformal) + Scalar(3) * P.k_up();
      auto dec = decompose_symmetry(P, sum, LiftMode::Conformal);
      ok = ok && dec.c == Scalar(3) && dec.v.data == v.data && dec.w.data == w.data &&
           dec.alpha.data == a.data;
    }
    {
      auto D = E2();
      PWGeometry P(D);
      auto v = vecsol(D, SolKind::ProjectiveSymmetry, {"1", "0"});
      auto w = bivsol(D, "x2");
      auto a = formsol(D, {"1", "0"});
      for (auto& sol : {v, w, a})
        ok = ok && ck_data(P, lift_symmetry(P, sol, LiftMode::Conformal)).conformal_residual.is_zero();
      TensorField sum = lift_symmetry(P, v, LiftMode::Conformal) +
                        lift_symmetry(P, w, LiftMode::Conformal) +
                        lift_symmetry(P, a, LiftMode::Conformal) - Scalar(1) * P.k_up();
      auto dec = decompose_symmetry(P, sum, LiftMode::Conformal);
      ok = ok && dec.c == Scalar(-1) && dec.v.data == v.data && dec.w.data == w.data &&
           dec.alpha.data == a.data;
    }
    {
      auto D = E3();
      PWGeometry P(D);
      auto v = vecsol(D, SolKind::ProjectiveSymmetry, {"1", "0", "0"});
      auto a = formsol(D, {"0", "0", "1"});
      for (auto& sol : {v, a})
        ok = ok && ck_data(P, lift_symmetry(P, sol, LiftMode::Conformal)).conformal_residual.is_zero();
    }
    // metric lifts and the killing-mode decomposition (c forced zero)
    {
      auto D = flat_connection(Chart::make(3));
      PWGeometry P(D);
      auto v = vecsol(D, SolKind::AffineSymmetry, {"x1", "-x2", "0"});
      auto w = bivsol(D, "1");
      auto a = formsol(D, {"0", "1", "0"});
      for (auto& sol : {v, w, a})
        ok = ok && ck_data(P, lift_symmetry(P, sol, LiftMode::Killing)).killing_residual.is_zero();
      TensorField sum = lift_symmetry(P, v, LiftMode::Killing) +
                        lift_symmetry(P, w, LiftMode::Killing) +
                        lift_symmetry(P, a, LiftMode::Killing);
      auto dec = decompose_symmetry(P, sum, LiftMode::Killing);
      ok = ok && dec.c.is_zero() && dec.v.data == v.data && dec.w.data == w.data &&
           dec.alpha.data == a.data;
    }
    {
      auto D = E2();
      PWGeometry P(D);
      auto v = vecsol(D, SolKind::AffineSymmetry, {"1", "0"});
      auto a = formsol(D, {"1", "0"});
      for (auto& sol : {v, a})
        ok = ok && ck_data(P, lift_symmetry(P, sol, LiftMode::Killing)).killing_residual.is_zero();
    }
    criterion(6, "all six lifts are exact symmetries; both decompositions round-trip", ok);
  }

  // 7. normal-form recovery and rejections
  {
    bool ok = true;
    for (auto& D : {E2(), E3()}) {
      PWGeometry P(D);
      auto res = recover_connection(walker_form_of(P));
      ok = ok && std::holds_alternative<AffineConnection>(res) &&
           std::get<AffineConnection>(res).gamma == D.gamma;
    }
    auto c2 = Chart::make(2);
    {
      TensorField th(c2, {Space::MDown, Space::MDown});
      th.at({0, 0}) = S("p1^2", c2);
      auto res = recover_connection(make_walker_form(c2, th));
      ok = ok && std::holds_alternative<WalkerRejection>(res) &&
           std::get<WalkerRejection>(res).condition == "linearity";
    }
    {
      TensorField th(c2, {Space::MDown, Space::MDown});
      th.at({0, 0}) = S("p1", c2);
      auto res = recover_connection(make_walker_form(c2, th));
      ok = ok && std::holds_alternative<WalkerRejection>(res) &&
           std::get<WalkerRejection>(res).condition == "trace";
    }
    criterion(7, "normal-form round trip; malformed forms rejected by the violated condition", ok);
  }

  // 8. projective invariance of W, Pi and of the lifts
  {
    bool ok = true;
    for (auto& D : {E2(), E3()}) {
      TensorField W0 = projective_weyl_any(D);
      TensorField Pi0 = thomas_parameters(D);
      int k = 0;
      for (const auto& ups : checks_detail::default_upsilons(D)) {
        auto Dh = projective_change(D, ups);
        ok = ok && projective_weyl_any(Dh) == W0 && thomas_parameters(Dh) == Pi0;
        ++k;
      }
      ok = ok && k == 3;
    }
    {
      auto D = flat_connection(Chart::make(2));
      Scalar s = S("1 + x1^2", D.chart);
      ok = ok && lift_invariance_check(D, s, vecsol(D, SolKind::ProjectiveSymmetry, {"x1", "0"}),
                                       LiftMode::Conformal);
      ok = ok && lift_invariance_check(D, s, bivsol(D, "1"), LiftMode::Conformal);
      ok = ok && lift_invariance_check(D, s, formsol(D, {"0", "1"}), LiftMode::Conformal);
    }
    {
      auto D = E2();
      Scalar s = S("1 + x2^2", D.chart);
      ok = ok && lift_invariance_check(D, s, vecsol(D, SolKind::ProjectiveSymmetry, {"1", "0"}),
                                       LiftMode::Conformal);
      ok = ok && lift_invariance_check(D, s, bivsol(D, "x2"), LiftMode::Conformal);
      ok = ok && lift_invariance_check(D, s, formsol(D, {"1", "0"}), LiftMode::Conformal);
    }
    criterion(8, "Weyl and Thomas parameters projectively invariant; lifts connection-independent",
              ok);
  }

  // 9. low-dimensional dualities map solutions to solutions
  {
    bool ok = true;
    {
      auto D = flat_connection(Chart::make(2));
      auto xi = vecsol(D, SolKind::EulerField, {"x1", "x2"});
      auto a = dualize_lowdim(D, xi);
      ok = ok && a.kind == SolKind::KillingOneForm && solution_residual(D, a).all_zero();
      ok = ok && dualize_lowdim(D, a).data == xi.data;
      auto w = bivsol(D, "1");
      auto sg = dualize_lowdim(D, w);
      ok = ok && sg.kind == SolKind::RicciFlatScale && solution_residual(D, sg).all_zero();
      ok = ok && dualize_lowdim(D, sg).data == w.data;
    }
    {
      auto D = E2();
      auto w = bivsol(D, "x2");
      auto sg = dualize_lowdim(D, w);
      ok = ok && solution_residual(D, sg).all_zero() && sg.data.at({}) == S("x2", D.chart);
    }
    {
      auto D = flat_connection(Chart::make(3));
      auto w = bivsol(D, "1");
      auto a = dualize_lowdim(D, w);
      ok = ok && a.kind == SolKind::KillingOneForm && solution_residual(D, a).all_zero();
      ok = ok && dualize_lowdim(D, a).data == w.data;
    }
    {
      auto D = E3();
      auto a = formsol(D, {"0", "0", "1"});
      auto w = dualize_lowdim(D, a);
      ok = ok && solution_residual(D, w).main.is_zero();
      ok = ok && dualize_lowdim(D, w).data == a.data;
    }
    criterion(9, "n = 2 and n = 3 dualities carry verified solutions to verified solutions", ok);
  }

  // 10. byte-identical structured gallery reports across consecutive runs
  {
    std::string first = report_json(run_gallery(1));
    std::string second = report_json(run_gallery(1));
    bool ok = first == second && !first.empty();
    bool all_pass = true;
    for (const auto& rep : run_gallery(2)) all_pass = all_pass && rep.all_passed();
    criterion(10, "structured gallery report is byte-identical across runs and fully green",
              ok && all_pass);
  }

  std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                              : "acceptance: " + std::to_string(failures) + " criteria failed\n");
  return failures;
}
