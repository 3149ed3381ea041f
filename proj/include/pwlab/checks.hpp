// The check registry: every verifiable identity of the library as a named,
// dispatchable check with a stable public name, plus the scenario runner.

#pragma once

#include <atomic>
#include <chrono>
#include <thread>

#include "pwlab/report.hpp"
#include "pwlab/scenario.hpp"
#include "pwlab/symmetry.hpp"

namespace pwlab {

// shared per-scenario state handed to every check
struct Workspace {
  const Scenario& sc;
  PWGeometry geometry;          // built once; lazy caches are concurrency-safe
  CliffordModule clifford;

  explicit Workspace(const Scenario& s)
      : sc(s), geometry(s.connection), clifford(s.connection.chart) {}

  std::vector<const Candidate*> of_kind(CandidateKind k) const {
    std::vector<const Candidate*> out;
    for (const auto& c : sc.candidates)
      if (c.kind == k) out.push_back(&c);
    return out;
  }
  std::vector<const Candidate*> solutions_of(SolKind k) const {
    std::vector<const Candidate*> out;
    for (const auto& c : sc.candidates)
      if (c.kind == CandidateKind::Solution && c.solkind == k) out.push_back(&c);
    return out;
  }
  ProjectiveSolution as_solution(const Candidate& c) const {
    return make_solution(*c.solkind, c.data);
  }
};

struct CheckOutcome {
  bool pass = true;
  std::string residual;

  void fail(const std::string& what) {
    pass = false;
    if (!residual.empty()) residual += "; ";
    residual += what;
  }
  void expect_zero(const TensorField& t, const std::string& label) {
    if (!t.is_zero()) fail(label + ": " + tensor_nonzero_str(t, label));
  }
  void expect_zero(const Scalar& s, const Chart& ch, const std::string& label) {
    if (!s.is_zero()) fail(label + " = " + scalar_str(s, ch));
  }
  void expect(bool ok, const std::string& label) {
    if (!ok) fail(label);
  }
};

struct CheckDef {
  std::string name;
  std::string anchor;              // the identity decided by the check
  std::vector<std::string> covers; // operation identifiers this check exercises
  std::function<CheckOutcome(const Workspace&)> run;
};

namespace checks_detail {

// fixed pseudo-random one-forms for the invariance checks when the scenario
// declares none; deterministic across runs
inline std::vector<TensorField> default_upsilons(const AffineConnection& D) {
  std::vector<TensorField> out;
  const Chart& ch = *D.chart;
  int n = D.n;
  int seeds[3][3] = {{1, -2, 3}, {2, 1, -1}, {-3, 2, 2}};
  for (int k = 0; k < 3; ++k) {
    TensorField u(D.chart, {Space::MDown});
    for (int A = 0; A < n; ++A) {
      Poly p(seeds[k][(A + k) % 3]);
      p += Poly::var(ch.xvar((A + k) % n)) * Poly(Coeff(seeds[k][A % 3]));
      p += Poly::var(ch.xvar((A + 2 * k + 1) % n), 2) * Poly(Coeff(seeds[(k + 1) % 3][A % 3]));
      u.at({A}) = Scalar(p);
    }
    out.push_back(std::move(u));
  }
  return out;
}

inline std::vector<TensorField> upsilons_for(const Workspace& ws) {
  std::vector<TensorField> out;
  for (const auto* c : ws.of_kind(CandidateKind::Upsilon)) out.push_back(c->data);
  if (out.empty()) out = default_upsilons(ws.sc.connection);
  return out;
}

}  // namespace checks_detail

inline const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> v;
    auto add = [&](std::string name, std::string anchor, std::vector<std::string> covers,
                   std::function<CheckOutcome(const Workspace&)> run) {
      v.push_back({std::move(name), std::move(anchor), std::move(covers), std::move(run)});
    };

    add("base.special", "D eps = 0 and Gamma_A^C_C = 0 in the adapted chart",
        {"projective.special_part"}, [](const Workspace& ws) {
          CheckOutcome out;
          const auto& D = ws.sc.connection;
          out.expect_zero(covd(D, D.volume), "D_eps");
          auto [ups, Dh] = special_part(D);
          out.expect_zero(ups, "Upsilon_to_special");
          out.expect_zero(covd(Dh, levi_civita_down(D.chart, D.n + 1)),
                          "weighted_volume_derivative");
          return out;
        });

    add("base.curvature", "R v = 2 D_[A D_B] v, Ric = R_PA^P_B, first Bianchi identity",
        {"projective.curvature", "symcore.symmetrize"}, [](const Workspace& ws) {
          CheckOutcome out;
          auto c = curvature(ws.sc.connection);
          out.expect_zero(symmetrize(c.riemann, {0, 1}, false), "riemann_sym_part");
          out.expect_zero(symmetrize(permute(c.riemann, {0, 1, 3, 2}), {0, 1, 2}, true),
                          "bianchi");
          return out;
        });

    add("base.schouten_symmetric", "P_AB = P_BA for a special connection",
        {"projective.curvature"}, [](const Workspace& ws) {
          CheckOutcome out;
          auto c = curvature(ws.sc.connection);
          out.expect_zero(antisym2(c.schouten, 0, 1), "schouten_antisym");
          return out;
        });

    add("base.weyl_tracefree", "every trace of W vanishes; W = 0 when n = 2",
        {"projective.projective_weyl_cotton"}, [](const Workspace& ws) {
          CheckOutcome out;
          auto wc = projective_weyl_cotton(ws.sc.connection);
          out.expect_zero(contract(wc.weyl, 0, 2), "trace_02");
          out.expect_zero(contract(wc.weyl, 1, 2), "trace_12");
          out.expect_zero(contract(wc.weyl, 2, 3), "trace_23");
          if (ws.sc.connection.n == 2) out.expect_zero(wc.weyl, "weyl_n2");
          return out;
        });

    add("base.weyl_invariance", "W and Pi unchanged under Gamma -> Gamma + 2 delta_(A Ups_B)",
        {"projective.projective_change", "projective.thomas_parameters"},
        [](const Workspace& ws) {
          CheckOutcome out;
          const auto& D = ws.sc.connection;
          TensorField W0 = projective_weyl_any(D);
          TensorField Pi0 = thomas_parameters(D);
          int k = 0;
          for (const auto& ups : checks_detail::upsilons_for(ws)) {
            auto Dh = projective_change(D, ups);
            out.expect(projective_weyl_any(Dh) == W0,
                       "weyl_changed_under_upsilon_" + std::to_string(k));
            out.expect(thomas_parameters(Dh) == Pi0,
                       "thomas_changed_under_upsilon_" + std::to_string(k));
            ++k;
          }
          return out;
        });

    add("base.thomas", "Pi = Gamma - 2/(n+1) delta_(A^C Gamma_B)^D_D equals the special Gamma",
        {"projective.thomas_parameters"}, [](const Workspace& ws) {
          CheckOutcome out;
          const auto& D = ws.sc.connection;
          out.expect(thomas_parameters(D) == special_part(D).second.gamma,
                     "thomas_vs_special_gamma");
          return out;
        });

    add("base.ricci_flat", "Ric = 0", {"projective.curvature"}, [](const Workspace& ws) {
      CheckOutcome out;
      out.expect_zero(curvature(ws.sc.connection).ricci, "Ric");
      return out;
    });

    add("base.solutions", "declared base data solves its overdetermined equation",
        {"projective.solution_residual"}, [](const Workspace& ws) {
          CheckOutcome out;
          for (const auto& c : ws.sc.candidates) {
            if (c.kind != CandidateKind::Solution) continue;
            Residual r = solution_residual(ws.sc.connection, ws.as_solution(c));
            if (c.expect_fail) {
              out.expect(!r.main.is_zero(), c.name + ": expected a nonzero residual");
            } else {
              out.expect_zero(r.main, c.name);
              for (const auto& [aname, t] : r.aux) out.expect_zero(t, c.name + "." + aname);
            }
          }
          return out;
        });

    add("base.prolong", "the prolonged first-order systems close exactly",
        {"projective.prolong"}, [](const Workspace& ws) {
          CheckOutcome out;
          for (const auto& c : ws.sc.candidates) {
            if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
            SolKind k = *c.solkind;
            if (k != SolKind::ProjectiveSymmetry && k != SolKind::AffineSymmetry &&
                k != SolKind::Bivector)
              continue;
            auto s = prolong(ws.sc.connection, ws.as_solution(c));
            for (const auto& [rname, r] : prolonged_system_residuals(ws.sc.connection, s))
              out.expect_zero(r, c.name + "." + rname);
          }
          return out;
        });

    add("base.dualize", "n = 2: xi <-> alpha and w <-> sigma; n = 3: w <-> alpha",
        {"projective.dualize_lowdim"}, [](const Workspace& ws) {
          CheckOutcome out;
          const auto& D = ws.sc.connection;
          if (D.n > 3) return out;
          for (const auto& c : ws.sc.candidates) {
            if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
            SolKind k = *c.solkind;
            bool ok2 = D.n == 2 && (k == SolKind::EulerField || k == SolKind::KillingOneForm ||
                                    k == SolKind::Bivector || k == SolKind::RicciFlatScale);
            bool ok3 = D.n == 3 && (k == SolKind::Bivector || k == SolKind::KillingOneForm);
            if (!ok2 && !ok3) continue;
            auto dual = dualize_lowdim(D, ws.as_solution(c));
            Residual r = solution_residual(D, dual);
            out.expect_zero(r.main, c.name + ".dual_residual");
            auto back = dualize_lowdim(D, dual);
            out.expect(back.data == c.data, c.name + ".dual_roundtrip");
          }
          return out;
        });

    add("pw.build", "g = 2 dx.dp - 2 Gamma p dx.dx with isotropic V, H and unit pairing",
        {"pwext.build"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          int n = P.n(), d = P.dim();
          for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B) {
              Scalar hv, hh, vv;
              for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                  const Scalar& gf = P.g().at({a, b});
                  if (gf.is_zero()) continue;
                  hv += P.eta_up().at({a, A}) * gf * P.chi_up().at({b, B});
                  hh += P.eta_up().at({a, A}) * gf * P.eta_up().at({b, B});
                  vv += P.chi_up().at({a, A}) * gf * P.chi_up().at({b, B});
                }
              out.expect(hv == (A == B ? Scalar(1) : Scalar()), "pairing");
              out.expect(hh.is_zero() && vv.is_zero(), "isotropy");
            }
          out.expect(contract(outer(P.chi_dn(), P.chi_up()), 0, 2).is_zero(), "chi_chi");
          out.expect(contract(outer(P.eta_up(), P.eta_dn()), 0, 2).is_zero(), "eta_eta");
          out.expect(contract(outer(P.chi_dn(), P.eta_up()), 0, 2) ==
                         permute(TensorField::delta(P.chart(), true), {1, 0}),
                     "chi_eta_delta");
          return out;
        });

    add("pw.frame_christoffels",
        "closed form from Gamma and R p equals the Koszul and intrinsic pipelines",
        {"pwext.frame_christoffels"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          TensorField closed = P.closed().gamma_frame;
          out.expect(closed == frame_christoffels_koszul(P), "koszul_oracle");
          out.expect(closed == frame_christoffels_intrinsic(P), "intrinsic_oracle");
          return out;
        });

    add("pw.riemann", "Riemann closed form equals the intrinsic tensor; R(V,..,V) = 0",
        {"pwext.curvature_dictionary"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          out.expect(P.closed().riemann_low == P.intrinsic().riemann_low, "riemann_dictionary");
          int n = P.n(), d = P.dim();
          for (int A = 0; A < n && out.pass; ++A)
            for (int B = 0; B < n && out.pass; ++B)
              for (int b = 0; b < d && out.pass; ++b)
                for (int c = 0; c < d; ++c)
                  if (!P.intrinsic().riemann_low.at({n + A, b, c, n + B}).is_zero()) {
                    out.fail("vertical_condition");
                    break;
                  }
          return out;
        });

    add("pw.curvature_dictionary",
        "Wt, Pt, Yt assembled from W, P, Y equal the intrinsic conformal tensors",
        {"pwext.curvature_dictionary"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          out.expect(P.closed().schouten == P.intrinsic().schouten, "schouten_dictionary");
          out.expect(P.closed().cotton == P.intrinsic().cotton, "cotton_dictionary");
          out.expect(P.closed().weyl_low == P.intrinsic().weyl_low, "weyl_dictionary");
          out.expect_zero(P.intrinsic().scalar_curv, *P.chart(), "scalar_curvature");
          int n = P.n(), d = P.dim();
          for (int A = 0; A < n && out.pass; ++A)
            for (int B = 0; B < n && out.pass; ++B)
              for (int b = 0; b < d && out.pass; ++b)
                for (int c = 0; c < d; ++c)
                  if (!P.intrinsic().weyl_low.at({n + A, b, c, n + B}).is_zero()) {
                    out.fail("weyl_vertical_condition");
                    break;
                  }
          return out;
        });

    add("pw.schouten_zero", "Pt = 0 (the extension is Ricci-flat)",
        {"pwext.curvature_dictionary"}, [](const Workspace& ws) {
          CheckOutcome out;
          out.expect_zero(ws.geometry.intrinsic().schouten, "Pt");
          return out;
        });

    add("pw.k", "Dt k = mu + g, L_k g = 2 g, g(k,k) = 0, mu = +1 on H and -1 on V",
        {"pwext.k_properties"}, [](const Workspace& ws) {
          CheckOutcome out;
          KReport rep = k_properties(ws.geometry);
          out.expect_zero(rep.ck_residual, "dk_minus_mu_minus_g");
          out.expect_zero(rep.lie_residual, "lie_k_g_minus_2g");
          out.expect_zero(rep.norm, *ws.geometry.chart(), "k_norm");
          out.expect(rep.mu_eigen_ok, "mu_eigenvalues");
          return out;
        });

    add("pw.conformal_covariance",
        "ghat = s^w (g + 2(w-2) p Ups dx.dx); ghat = s^2 g exactly when w = 2",
        {"pwext.conformal_covariance_check"}, [](const Workspace& ws) {
          CheckOutcome out;
          auto scales = ws.of_kind(CandidateKind::Scale);
          for (const auto* c : scales) {
            CovarianceReport rep = conformal_covariance_check(ws.sc.connection, c->scalar);
            for (const auto& pw : rep.weights) {
              out.expect(pw.identity_ok,
                         c->name + ".identity_w" + std::to_string(pw.w));
              out.expect(pw.equals_s2g == (pw.w == 2),
                         c->name + ".equality_w" + std::to_string(pw.w));
            }
          }
          out.expect(!scales.empty(), "no scale candidates declared");
          return out;
        });

    add("pw.recover", "normal-form recovery round trip; malformed Theta rejected by name",
        {"pwext.recover_connection"}, [](const Workspace& ws) {
          CheckOutcome out;
          auto res = recover_connection(walker_form_of(ws.geometry));
          out.expect(std::holds_alternative<AffineConnection>(res) &&
                         std::get<AffineConnection>(res).gamma == ws.sc.connection.gamma,
                     "roundtrip");
          for (const auto* c : ws.of_kind(CandidateKind::WalkerTheta)) {
            auto r = recover_connection(make_walker_form(ws.sc.connection.chart, c->data));
            if (c->expect_rejection == "accept") {
              out.expect(std::holds_alternative<AffineConnection>(r), c->name + ".accept");
            } else {
              out.expect(std::holds_alternative<WalkerRejection>(r) &&
                             std::get<WalkerRejection>(r).condition == c->expect_rejection,
                         c->name + ".reject_" + c->expect_rejection);
            }
          }
          return out;
        });

    add("pw.thomas_pw", "the Thomas-parameter metric equals the special-representative metric",
        {"pwext.thomas_pw"}, [](const Workspace& ws) {
          CheckOutcome out;
          out.expect(thomas_pw(ws.sc.connection).g() == ws.geometry.g(), "thomas_metric");
          return out;
        });

    add("spin.clifford", "gamma_(a gamma_b) = -g_ab on every basis spinor; ker(gamma chi) = n",
        {"spin.make_chi_etacheck"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          const CliffordModule& cm = ws.clifford;
          int d = P.dim();
          for (int a = 0; a < d && out.pass; ++a)
            for (int b = a; b < d && out.pass; ++b)
              for (int m = 0; m < cm.dimension(); ++m) {
                SpinorField s = cm.zero_spinor(false);
                s.c[m] = Scalar(1);
                SpinorField anti = cm.gamma_coord(P, a, cm.gamma_coord(P, b, s)) +
                                   cm.gamma_coord(P, b, cm.gamma_coord(P, a, s));
                SpinorField expect = (Scalar(-2) * P.g().at({a, b})) * s;
                expect.cw = anti.cw;
                if (!(anti == expect)) {
                  out.fail("clifford_relation");
                  break;
                }
              }
          out.expect(clifford_annihilator_rank(P, cm, cm.chi()) == P.n(), "purity_rank");
          return out;
        });

    add("spin.projectors",
        "etacheck chi = -1/2; gamma(V) chi = 0; gamma(H) kills etacheck",
        {"spin.make_chi_etacheck"}, [](const Workspace& ws) {
          CheckOutcome out;
          const CliffordModule& cm = ws.clifford;
          int n = ws.geometry.n();
          out.expect(cm.pair(cm.etacheck(), cm.chi()) == Scalar(Rat(-1, 2)), "pairing");
          for (int A = 0; A < n; ++A) {
            out.expect(cm.gamma_frame(n + A, cm.chi()).is_zero(), "vertical_kills_chi");
            out.expect(cm.gamma_frame(A, cm.etacheck()).is_zero(), "horizontal_kills_etacheck");
          }
          return out;
        });

    add("spin.chi_parallel", "Dt chi = 0 for the spin connection of the adapted frame",
        {"spin.spin_covariant_derivative"}, [](const Workspace& ws) {
          CheckOutcome out;
          for (auto& dsv : spin_covd_coord(ws.geometry, ws.clifford, ws.clifford.chi()))
            out.expect(dsv.is_zero(), "dchi");
          return out;
        });

    add("spin.chi_twistor", "Dt_a chi + 1/(2n) gamma_a Dslash chi = 0 and Dslash chi = 0",
        {"spin.twistor_residual"}, [](const Workspace& ws) {
          CheckOutcome out;
          out.expect(dirac(ws.geometry, ws.clifford, ws.clifford.chi()).is_zero(), "dirac_chi");
          for (auto& r : twistor_residual(ws.geometry, ws.clifford, ws.clifford.chi()))
            out.expect(r.is_zero(), "twistor_chi");
          return out;
        });

    add("spin.lie_chi", "L_k chi = -(n+1)/2 chi",
        {"spin.lie_derivative_spinor"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          SpinorField lie = lie_derivative_spinor(P, ws.clifford, P.k_up(), ws.clifford.chi());
          SpinorField expect = Scalar(Rat(-(P.n() + 1), 2)) * ws.clifford.chi();
          expect.cw = lie.cw;
          out.expect(lie == expect, "eigenvalue");
          return out;
        });

    add("spin.eta",
        "eta = p/sqrt2; k = 2 sqrt2 eta chi; eta-etacheck projector; Weyl-sourced derivative",
        {"spin.eta_spinor"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          const CliffordModule& cm = ws.clifford;
          const Chart& ch = *P.chart();
          int n = P.n(), d = P.dim();
          SpinorField eta = eta_spinor(P, cm);
          auto comp = eta_components(P, cm, eta);
          for (int A = 0; A < n; ++A)
            out.expect(comp[A] == Scalar::var(ch.pvar(A)) / Scalar::sqrt2(), "components");
          TensorField k(P.chart(), {Space::MtUp});
          for (int a = 0; a < d; ++a) {
            Scalar v;
            for (int A = 0; A < n; ++A) v += comp[A] * P.chi_up().at({a, A});
            k.at({a}) = Scalar(2) * Scalar::sqrt2() * v;
          }
          out.expect(k == P.k_up(), "k_reconstruction");
          // derivative identity with the Weyl source
          SpinorField ec = cm.etacheck();
          auto deta = spin_covd_coord(P, cm, eta);
          const TensorField& W = P.intrinsic().weyl_low;
          Scalar inv_r2 = Scalar(1) / Scalar::sqrt2();
          for (int a = 0; a < d && out.pass; ++a) {
            SpinorField lhs = deta[a] - inv_r2 * cm.gamma_coord(P, a, ec);
            SpinorField rhs = cm.zero_spinor(true);
            for (int dd = 0; dd < d; ++dd) {
              const Scalar& kd = P.k_up().at({dd});
              if (kd.is_zero()) continue;
              for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c) {
                  const Scalar& w = W.at({dd, a, b, c});
                  if (w.is_zero()) continue;
                  for (int e = 0; e < d; ++e) {
                    const Scalar& gbe = P.ginv().at({b, e});
                    if (gbe.is_zero()) continue;
                    SpinorField inner = cm.gamma_coord(P, e, eta);
                    for (int f = 0; f < d; ++f) {
                      const Scalar& gcf = P.ginv().at({c, f});
                      if (gcf.is_zero()) continue;
                      rhs = rhs + (Scalar(Rat(1, 8)) * kd * w * gbe * gcf) *
                                      cm.gamma_coord(P, f, inner);
                    }
                  }
                }
            }
            lhs.cw = rhs.cw = 0;
            out.expect(lhs == rhs, "weyl_sourced_derivative");
          }
          return out;
        });

    add("eins.aes", "(Dt_(a Dt_b) + Pt_ab)_0 sigma = 0 for declared Einstein scales",
        {"einstein.aes_residual"}, [](const Workspace& ws) {
          CheckOutcome out;
          for (const auto* c : ws.of_kind(CandidateKind::EinsteinScale)) {
            TensorField r = aes_residual(ws.geometry, c->scalar);
            if (c->expect_fail)
              out.expect(!r.is_zero(), c->name + ": expected a nonzero residual");
            else
              out.expect_zero(r, c->name);
          }
          return out;
        });

    add("eins.lifts",
        "lifts of Ricci-flat scales and euler fields are Einstein scales with L_k = -/+ 1",
        {"einstein.lift_minus", "einstein.lift_plus"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          for (const auto* c : ws.solutions_of(SolKind::RicciFlatScale)) {
            if (c->expect_fail) continue;
            Scalar lm = lift_minus(P, ws.as_solution(*c));
            out.expect_zero(aes_residual(P, lm), c->name + ".aes");
            out.expect(P.lie_k_density(lm, 1) == -lm, c->name + ".eigenvalue");
            out.expect_zero(einstein_trace_identity(P, lm), *P.chart(),
                            c->name + ".ricci_flat_trace");
          }
          for (const auto* c : ws.solutions_of(SolKind::EulerField)) {
            if (c->expect_fail) continue;
            Scalar lp = lift_plus(P, ws.as_solution(*c));
            out.expect_zero(aes_residual(P, lp), c->name + ".aes");
            out.expect(P.lie_k_density(lp, 1) == lp, c->name + ".eigenvalue");
            out.expect_zero(einstein_trace_identity(P, lp), *P.chart(),
                            c->name + ".ricci_flat_trace");
            auto sum = lift_plus_summands(ws.sc.connection, ws.as_solution(*c));
            out.expect_zero(sum.prolonged, c->name + ".prolonged_block");
            out.expect_zero(sum.weyl, c->name + ".weyl_block");
          }
          // every solver-found euler field within the degree bound lifts cleanly
          int found = 0;
          for (auto& s : solve_polynomial(ws.sc.connection, SolKind::EulerField,
                                          ws.sc.options.degree_bound, true)) {
            Scalar lp = lift_plus(P, s);
            out.expect_zero(aes_residual(P, lp),
                            "solver_euler_" + std::to_string(found++) + ".aes");
          }
          return out;
        });

    add("eins.decompose", "sigma = sigma_+ + sigma_- recovers (xi, sigma) exactly",
        {"einstein.decompose_scale", "symcore.grade_in_p"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          auto xis = ws.solutions_of(SolKind::EulerField);
          auto sgs = ws.solutions_of(SolKind::RicciFlatScale);
          if (!xis.empty() && !sgs.empty() && !xis[0]->expect_fail && !sgs[0]->expect_fail) {
            Scalar st = lift_plus(P, ws.as_solution(*xis[0])) +
                        lift_minus(P, ws.as_solution(*sgs[0]));
            auto dec = decompose_scale(P, st);
            out.expect(dec.xi.data == xis[0]->data, "xi_roundtrip");
            out.expect(dec.sigma.data.at({}) == sgs[0]->data.at({}), "sigma_roundtrip");
            out.expect_zero(kk_hessian(P, st), *P.chart(), "kk_hessian");
          }
          for (const auto* c : ws.of_kind(CandidateKind::EinsteinScale)) {
            if (c->expect_fail) continue;
            auto dec = decompose_scale(P, c->scalar);
            out.expect(dec.plus + dec.minus == c->scalar, c->name + ".sum");
            out.expect_zero(kk_hessian(P, c->scalar), *P.chart(), c->name + ".kk_hessian");
          }
          return out;
        });

    add("sym.k_ck", "k is conformal Killing with psi = -1 and Killing residual g",
        {"symmetry.ck_residual"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          CKData ck = ck_data(P, P.k_up());
          out.expect_zero(ck.conformal_residual, "conformal_residual");
          out.expect(ck.psi == Scalar(-1), "psi");
          TensorField expect = P.g();
          expect.set_cw(ck.killing_residual.cw());
          out.expect(ck.killing_residual == expect, "killing_residual_equals_g");
          return out;
        });

    add("sym.prolongation", "the conformal Killing prolongation closes on k and the lifts",
        {"symmetry.ck_residual"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          auto run = [&](const TensorField& v, const std::string& label) {
            for (auto& [rname, r] : ck_prolongation_residuals(P, v))
              out.expect_zero(r, label + "." + rname);
          };
          run(P.k_up(), "k");
          for (const auto& c : ws.sc.candidates) {
            if (c.kind == CandidateKind::ConformalKilling) run(c.data, c.name);
            if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
            SolKind k = *c.solkind;
            if (k == SolKind::ProjectiveSymmetry || k == SolKind::Bivector ||
                k == SolKind::KillingOneForm)
              run(lift_symmetry(P, ws.as_solution(c), LiftMode::Conformal), c.name);
          }
          return out;
        });

    add("sym.lifts",
        "the six lifts solve their Killing equations with L_k eigenvalues 0, +2, -2",
        {"symmetry.lift_conformal", "symmetry.lift_affine"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          for (const auto& c : ws.sc.candidates) {
            if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
            SolKind k = *c.solkind;
            auto sol = ws.as_solution(c);
            if (k == SolKind::ProjectiveSymmetry || k == SolKind::Bivector ||
                k == SolKind::KillingOneForm) {
              TensorField lift = lift_symmetry(P, sol, LiftMode::Conformal);
              out.expect_zero(ck_data(P, lift).conformal_residual, c.name + ".conformal");
              TensorField lie = lie_k_vector(P, lift);
              if (k == SolKind::ProjectiveSymmetry)
                out.expect_zero(lie, c.name + ".lie0");
              else if (k == SolKind::Bivector) {
                out.expect(lie == Scalar(2) * lift, c.name + ".lie_plus2");
                out.expect(plus_lift_tangent_to_U(P, ws.clifford, lift), c.name + ".tangent_U");
              } else {
                out.expect(lie == Scalar(-2) * lift, c.name + ".lie_minus2");
                out.expect(minus_lift_tangent_to_V(P, lift), c.name + ".tangent_V");
              }
            }
            if (k == SolKind::AffineSymmetry || k == SolKind::KillingOneForm ||
                (k == SolKind::Bivector && c.affine)) {
              TensorField lift = lift_symmetry(P, sol, LiftMode::Killing);
              out.expect_zero(ck_data(P, lift).killing_residual, c.name + ".killing");
            }
          }
          return out;
        });

    add("sym.decompose.roundtrip",
        "v = v_+ + v_0 + v_- + c k recovered exactly; the k-content side condition "
        "is verified for the metric in hand",
        {"symmetry.decompose", "symcore.grade_in_p"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          // conformal mode: sum the declared conformal-kind lifts plus c k
          {
            TensorField sum(P.chart(), {Space::MtUp});
            const Candidate *cv = nullptr, *cw = nullptr, *ca = nullptr;
            for (const auto& c : ws.sc.candidates) {
              if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
              if (c.solkind == SolKind::ProjectiveSymmetry && !cv) cv = &c;
              if (c.solkind == SolKind::Bivector && !cw) cw = &c;
              if (c.solkind == SolKind::KillingOneForm && !ca) ca = &c;
            }
            if (cv || cw || ca) {
              if (cv) sum = sum + lift_symmetry(P, ws.as_solution(*cv), LiftMode::Conformal);
              if (cw) sum = sum + lift_symmetry(P, ws.as_solution(*cw), LiftMode::Conformal);
              if (ca) sum = sum + lift_symmetry(P, ws.as_solution(*ca), LiftMode::Conformal);
              sum = sum + ws.sc.options.k_coefficient * P.k_up();
              auto dec = decompose_symmetry(P, sum, LiftMode::Conformal);
              out.expect(dec.c == ws.sc.options.k_coefficient, "k_coefficient");
              if (cv) out.expect(dec.v.data == cv->data, "v_roundtrip");
              if (cw) out.expect(dec.w.data == cw->data, "w_roundtrip");
              if (ca) out.expect(dec.alpha.data == ca->data, "alpha_roundtrip");
            }
          }
          // metric mode: c is forced to zero
          {
            TensorField sum(P.chart(), {Space::MtUp});
            const Candidate *cv = nullptr, *cw = nullptr, *ca = nullptr;
            for (const auto& c : ws.sc.candidates) {
              if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
              if (c.solkind == SolKind::AffineSymmetry && !cv) cv = &c;
              if (c.solkind == SolKind::Bivector && c.affine && !cw) cw = &c;
              if (c.solkind == SolKind::KillingOneForm && !ca) ca = &c;
            }
            if (cv || cw || ca) {
              if (cv) sum = sum + lift_symmetry(P, ws.as_solution(*cv), LiftMode::Killing);
              if (cw) sum = sum + lift_symmetry(P, ws.as_solution(*cw), LiftMode::Killing);
              if (ca) sum = sum + lift_symmetry(P, ws.as_solution(*ca), LiftMode::Killing);
              auto dec = decompose_symmetry(P, sum, LiftMode::Killing);
              out.expect(dec.c.is_zero(), "metric_mode_c_zero");
              if (cv) out.expect(dec.v.data == cv->data, "affine_v_roundtrip");
              if (cw) out.expect(dec.w.data == cw->data, "affine_w_roundtrip");
              if (ca) out.expect(dec.alpha.data == ca->data, "affine_alpha_roundtrip");
            }
          }
          // declared total-space candidates decompose cleanly too
          for (const auto& c : ws.sc.candidates) {
            if (c.kind == CandidateKind::ConformalKilling) {
              auto dec = decompose_symmetry(P, c.data, LiftMode::Conformal);
              TensorField back = dec.plus + dec.zero + dec.minus;
              for (int A = 0; A < P.n(); ++A)
                back.at({P.n() + A}) +=
                    Scalar(2) * dec.c * Scalar::var(P.chart()->pvar(A));
              out.expect(back == c.data, c.name + ".reassembly");
            }
            if (c.kind == CandidateKind::Killing) {
              auto dec = decompose_symmetry(P, c.data, LiftMode::Killing);
              out.expect(dec.plus + dec.zero + dec.minus == c.data, c.name + ".reassembly");
            }
          }
          return out;
        });

    add("sym.lightlike", "g(v0, v0) = 0 iff the base field satisfies its geodesy criterion",
        {"symmetry.lightlike_geodetic"}, [](const Workspace& ws) {
          CheckOutcome out;
          for (const auto& c : ws.sc.candidates) {
            if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
            if (c.solkind == SolKind::ProjectiveSymmetry) {
              auto rep = lightlike_geodetic(ws.geometry, ws.as_solution(c), LiftMode::Conformal);
              out.expect(rep.equivalent, c.name + ".equivalence");
            }
            if (c.solkind == SolKind::AffineSymmetry) {
              auto rep = lightlike_geodetic(ws.geometry, ws.as_solution(c), LiftMode::Killing);
              out.expect(rep.equivalent, c.name + ".equivalence");
            }
          }
          return out;
        });

    add("sym.invariance", "lifted fields are unchanged under a change of special connection",
        {"symmetry.lift_invariance_check"}, [](const Workspace& ws) {
          CheckOutcome out;
          auto scales = ws.of_kind(CandidateKind::Scale);
          if (scales.empty()) return out;
          const Scalar& s = scales[0]->scalar;
          for (const auto& c : ws.sc.candidates) {
            if (c.kind != CandidateKind::Solution || c.expect_fail) continue;
            SolKind k = *c.solkind;
            if (k == SolKind::ProjectiveSymmetry || k == SolKind::Bivector ||
                k == SolKind::KillingOneForm)
              out.expect(lift_invariance_check(ws.sc.connection, s, ws.as_solution(c),
                                               LiftMode::Conformal),
                         c.name + ".invariance");
          }
          return out;
        });

    add("sym.commutators", "[v^A, h_B] = Gamma_B^A_C v^C and [h_A, h_B] = R_AB^C_D p_C v^D",
        {"pwext.frame_christoffels"}, [](const Workspace& ws) {
          CheckOutcome out;
          const PWGeometry& P = ws.geometry;
          int n = P.n();
          auto c = curvature(ws.sc.connection);
          const Chart& ch = *P.chart();
          for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B) {
              TensorField vh = frame_commutator(P, n + A, B);
              TensorField e1(P.chart(), {Space::MtUp});
              for (int C = 0; C < n; ++C) e1.at({n + C}) += ws.sc.connection.G(B, A, C);
              out.expect(vh == e1, "vertical_horizontal");
              TensorField hh = frame_commutator(P, A, B);
              TensorField e2(P.chart(), {Space::MtUp});
              for (int C = 0; C < n; ++C)
                for (int Dd = 0; Dd < n; ++Dd)
                  e2.at({n + Dd}) += c.riemann.at({A, B, C, Dd}) * Scalar::var(ch.pvar(C));
              out.expect(hh == e2, "horizontal_horizontal");
            }
          return out;
        });

    return v;
  }();
  return defs;
}

// operations with stated sources that the registry must exercise
inline const std::vector<std::string>& required_coverage() {
  static const std::vector<std::string> ops = {
      "symcore.symmetrize",          "symcore.grade_in_p",
      "projective.curvature",        "projective.projective_weyl_cotton",
      "projective.projective_change", "projective.special_part",
      "projective.thomas_parameters", "projective.solution_residual",
      "projective.prolong",          "projective.dualize_lowdim",
      "pwext.build",                 "pwext.frame_christoffels",
      "pwext.curvature_dictionary",  "pwext.k_properties",
      "pwext.conformal_covariance_check", "pwext.recover_connection",
      "pwext.thomas_pw",             "spin.make_chi_etacheck",
      "spin.twistor_residual",       "spin.lie_derivative_spinor",
      "spin.eta_spinor",             "einstein.aes_residual",
      "einstein.lift_minus",         "einstein.lift_plus",
      "einstein.decompose_scale",    "symmetry.ck_residual",
      "symmetry.lift_conformal",     "symmetry.lift_affine",
      "symmetry.decompose",          "symmetry.lightlike_geodetic",
      "symmetry.lift_invariance_check",
  };
  return ops;
}

inline const std::vector<std::string>& default_checks() {
  static const std::vector<std::string> names = {
      "base.special",        "base.schouten_symmetric", "base.curvature",
      "base.weyl_tracefree", "pw.build",                "pw.frame_christoffels",
      "pw.riemann",          "pw.curvature_dictionary", "pw.k",
      "spin.projectors",     "spin.chi_twistor",        "spin.lie_chi",
  };
  return names;
}

inline std::string resolve_check_name(const std::string& name) {
  static const std::map<std::string, std::string> aliases = {
      {"base_ricci_flat", "base.ricci_flat"},
      {"pw_schouten_zero", "pw.schouten_zero"},
  };
  auto it = aliases.find(name);
  return it != aliases.end() ? it->second : name;
}

inline const CheckDef* find_check(const std::string& name) {
  std::string canon = resolve_check_name(name);
  for (const auto& def : check_registry())
    if (def.name == canon) return &def;
  return nullptr;
}

inline std::string valid_check_names() {
  std::string out;
  for (const auto& def : check_registry()) {
    if (!out.empty()) out += ", ";
    out += def.name;
  }
  return out;
}

// jobs <= 0 uses the scenario's own parallelism option
inline CheckReport run_checks(const Scenario& sc, int jobs = 0) {
  if (jobs <= 0) jobs = sc.options.jobs;
  std::vector<const CheckDef*> defs;
  const auto& names = sc.checks.empty() ? default_checks() : sc.checks;
  for (const auto& name : names) {
    const CheckDef* def = find_check(name);
    if (!def)
      throw Error("unknown check name '" + name + "'; valid names: " + valid_check_names());
    defs.push_back(def);
  }
  Workspace ws(sc);
  CheckReport rep;
  rep.scenario = sc.name;
  rep.entries.resize(defs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= defs.size()) break;
      const CheckDef& def = *defs[i];
      CheckResult res;
      res.name = def.name;
      res.anchor = def.anchor;
      auto t0 = std::chrono::steady_clock::now();
      try {
        CheckOutcome oc = def.run(ws);
        res.status = oc.pass ? CheckStatus::Pass : CheckStatus::Fail;
        res.residual = oc.residual;
      } catch (const std::exception& e) {
        res.status = CheckStatus::Broken;
        res.residual = e.what();
      }
      res.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      rep.entries[i] = std::move(res);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  rep.normalize();
  return rep;
}

}  // namespace pwlab
