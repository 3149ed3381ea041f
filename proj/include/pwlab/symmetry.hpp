// Conformal and metric symmetries of the extension: Killing residuals and
// their prolongation, the six lifts from base data, the graded decomposition
// recovering base data and the k-multiple, light-likeness criteria, and the
// invariance of the lifts under a change of special connection.

#pragma once

#include "pwlab/einstein.hpp"
#include "pwlab/spin.hpp"

namespace pwlab {

struct CKData {
  TensorField conformal_residual;  // trace-free symmetric part of Dt v
  TensorField killing_residual;    // full symmetric part
  TensorField phi;                 // Dt_[a v_b]
  Scalar psi;                      // -(1/2n) Dt^a v_a
  TensorField beta;                // Pt_ab v^b - Dt_a psi
};

inline CKData ck_data(const PWGeometry& P, const TensorField& v_up) {
  if (v_up.slots() != std::vector<Space>{Space::MtUp})
    throw Error("ck_data: expected a vector field on the total space");
  int d = P.dim(), n = P.n();
  TensorField v_dn = P.lower(v_up);
  TensorField Dv = P.covd(v_dn);
  CKData out{TensorField(P.chart(), {Space::MtDown, Space::MtDown}, 0, v_dn.cw()),
             TensorField(P.chart(), {Space::MtDown, Space::MtDown}, 0, v_dn.cw()),
             TensorField(P.chart(), {Space::MtDown, Space::MtDown}, 0, v_dn.cw()),
             Scalar(),
             TensorField(P.chart(), {Space::MtDown})};
  TensorField sym = sym2(Dv, 0, 1);
  Scalar tr;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) tr += P.ginv().at({a, b}) * sym.at({a, b});
  out.killing_residual = sym;
  out.conformal_residual = sym;
  out.conformal_residual.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
    val -= Scalar(Rat(1, 2 * n)) * tr * P.g().at({i[0], i[1]});
  });
  out.phi.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
    val = Scalar(Rat(1, 2)) * (Dv.at({i[0], i[1]}) - Dv.at({i[1], i[0]}));
  });
  out.psi = Scalar(Rat(-1, 2 * n)) * tr;
  const TensorField& Pt = P.intrinsic().schouten;
  out.beta.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
    val = -out.psi.partial(i[0]);
    for (int b = 0; b < d; ++b) val += Pt.at({i[0], b}) * v_up.at({b});
  });
  return out;
}

// closure of the prolonged conformal Killing system; all residuals vanish
// exactly for conformal Killing fields
inline std::vector<std::pair<std::string, TensorField>> ck_prolongation_residuals(
    const PWGeometry& P, const TensorField& v_up) {
  CKData ck = ck_data(P, v_up);
  if (!ck.conformal_residual.is_zero())
    throw Error("ck_prolongation_residuals: not a conformal Killing field");
  int d = P.dim();
  const TensorField& Pt = P.intrinsic().schouten;
  const TensorField& W = P.intrinsic().weyl_low;
  const TensorField& Y = P.intrinsic().cotton;
  TensorField v_dn = P.lower(v_up);
  std::vector<std::pair<std::string, TensorField>> out;
  // Dt_a phi_bc + 2 g_a[b beta_c] + 2 Pt_a[b v_c] - v^d W_dabc = 0
  TensorField r2 = P.covd(ck.phi);
  r2.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
    int a = i[0], b = i[1], c = i[2];
    val += P.g().at({a, b}) * ck.beta.at({c}) - P.g().at({a, c}) * ck.beta.at({b});
    val += Pt.at({a, b}) * v_dn.at({c}) - Pt.at({a, c}) * v_dn.at({b});
    for (int dd = 0; dd < d; ++dd) val -= v_up.at({dd}) * W.at({dd, a, b, c});
  });
  out.emplace_back("ck_prolong_dphi", std::move(r2));
  // Dt_a beta_b - Pt_a^c phi_cb - psi Pt_ab + v^d Yt_bda = 0
  TensorField r4 = P.covd(ck.beta);
  r4.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
    int a = i[0], b = i[1];
    for (int c = 0; c < d; ++c) {
      Scalar Pud;
      for (int e = 0; e < d; ++e) Pud += Pt.at({a, e}) * P.ginv().at({e, c});
      val -= Pud * ck.phi.at({c, b});
    }
    val -= ck.psi * Pt.at({a, b});
    for (int dd = 0; dd < d; ++dd) val += v_up.at({dd}) * Y.at({b, dd, a});
  });
  out.emplace_back("ck_prolong_dbeta", std::move(r4));
  return out;
}

// Lie derivative of a vector field along k (connection-free)
inline TensorField lie_k_vector(const PWGeometry& P, const TensorField& v_up) {
  const Chart& ch = *P.chart();
  int n = P.n();
  TensorField out(P.chart(), {Space::MtUp}, v_up.pw(), v_up.cw());
  for (int a = 0; a < P.dim(); ++a) {
    Scalar val;
    for (int A = 0; A < n; ++A)
      val += Scalar(2) * Scalar::var(ch.pvar(A)) * v_up.at({a}).partial(ch.pvar(A));
    if (a >= n) val -= Scalar(2) * v_up.at({a});
    out.at({a}) = val;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The six lifts. eta_A = p_A / sqrt2 turns the spinor expressions into the
// polynomial vector fields implemented here.

enum class LiftMode { Conformal, Killing };

inline TensorField lift_symmetry(const PWGeometry& P, const ProjectiveSolution& sol,
                                 LiftMode mode) {
  const Chart& ch = *P.chart();
  const AffineConnection& D = P.base();
  int n = P.n();
  auto pvar = [&](int A) { return Scalar::var(ch.pvar(A)); };
  TensorField out(P.chart(), {Space::MtUp});
  switch (sol.kind) {
    case SolKind::ProjectiveSymmetry:
    case SolKind::AffineSymmetry: {
      if ((mode == LiftMode::Conformal) != (sol.kind == SolKind::ProjectiveSymmetry))
        throw Error("lift_symmetry: solution kind does not match the lift mode");
      ProjectiveSolution pr = sol.prolongation ? sol : prolong(D, sol);
      const TensorField& phi = *pr.prolongation->phi;
      Scalar psi = pr.prolongation->psi->at({});
      Scalar kcoef = mode == LiftMode::Conformal
                         ? Scalar(Rat(n - 1, 2 * (n + 1))) * psi
                         : Scalar(Rat(-1, 2)) * psi;
      // v^A h_A - phi_B^A p_A v^B + kcoef * k
      for (int A = 0; A < n; ++A) {
        out.at({A}) = sol.data.at({A});
        Scalar pval = Scalar(2) * kcoef * pvar(A);
        for (int B = 0; B < n; ++B) {
          for (int C = 0; C < n; ++C) pval += sol.data.at({B}) * D.G(B, C, A) * pvar(C);
          pval -= phi.at({A, B}) * pvar(B);
        }
        out.at({n + A}) = pval;
      }
      break;
    }
    case SolKind::Bivector: {
      Residual r = solution_residual(D, sol);
      if (mode == LiftMode::Conformal) {
        if (!r.main.is_zero()) throw Error("lift_symmetry: bivector equation residual nonzero");
        for (const auto& [name, t] : r.aux)
          if (!t.is_zero()) throw Error("lift_symmetry: integrability violated (" + name + ")");
      } else {
        // metric lift requires a parallel bivector with the curvature condition
        if (!covd(D, sol.data).is_zero())
          throw Error("lift_symmetry: bivector is not parallel");
        BaseCurvature c = curvature(D);
        TensorField T(P.chart(), {Space::MUp, Space::MUp, Space::MDown, Space::MDown}, -2);
        T.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
          int A = i[0], Dd = i[1], C = i[2], E = i[3];
          Scalar acc;
          for (int B = 0; B < n; ++B) {
            acc += sol.data.at({B, A}) * c.riemann.at({B, C, Dd, E});
            acc += sol.data.at({B, Dd}) * c.riemann.at({B, C, A, E});
            acc += sol.data.at({B, A}) * c.riemann.at({B, E, Dd, C});
            acc += sol.data.at({B, Dd}) * c.riemann.at({B, E, A, C});
          }
          v = Scalar(Rat(1, 4)) * acc;
        });
        if (!T.is_zero())
          throw Error("lift_symmetry: integrability violated (bivector_riemann_integrability)");
      }
      ProjectiveSolution pr = sol.prolongation ? sol : [&] {
        ProjectiveSolution q = sol;
        Prolongation pro;
        TensorField Dw = covd(D, sol.data);
        TensorField nu = Scalar(Rat(1, n - 1)) * contract(permute(Dw, {1, 0, 2}), 0, 1);
        nu.set_pw(-2);
        pro.nu = std::move(nu);
        q.prolongation = std::move(pro);
        return q;
      }();
      const TensorField& nu = *pr.prolongation->nu;
      // w^{AB} p_A etacheck^a_B  -  (conformal only) 1/2 (nu^B p_B) k
      Scalar nup;
      if (mode == LiftMode::Conformal)
        for (int B = 0; B < n; ++B) nup += nu.at({B}) * pvar(B);
      for (int A = 0; A < n; ++A) {
        Scalar xval;
        for (int B = 0; B < n; ++B) xval += sol.data.at({B, A}) * pvar(B);
        out.at({A}) = xval;
        // horizontal part contributes Gamma p through etacheck
        Scalar pval = -nup * pvar(A);
        for (int B = 0; B < n; ++B) {
          Scalar wB;
          for (int C = 0; C < n; ++C) wB += sol.data.at({C, B}) * pvar(C);
          if (wB.is_zero()) continue;
          for (int E = 0; E < n; ++E) pval += wB * D.G(B, E, A) * pvar(E);
        }
        out.at({n + A}) = pval;
      }
      break;
    }
    case SolKind::KillingOneForm: {
      if (!solution_residual(D, sol).main.is_zero())
        throw Error("lift_symmetry: Killing one-form residual nonzero");
      for (int A = 0; A < n; ++A) out.at({n + A}) = sol.data.at({A});
      break;
    }
    default:
      throw Error("lift_symmetry: kind does not induce a symmetry lift");
  }
  return out;
}

// tangency of the plus and minus lifts to the distinguished distributions
inline bool minus_lift_tangent_to_V(const PWGeometry& P, const TensorField& v_up) {
  TensorField c = contract(outer(v_up, P.chi_dn()), 0, 1);
  return c.is_zero();
}
inline bool plus_lift_tangent_to_U(const PWGeometry& P, const CliffordModule& cm,
                                   const TensorField& v_up) {
  SpinorField eta = eta_spinor(P, cm);
  SpinorField image = cm.gamma_vector(P, v_up, eta);
  return image.is_zero();
}

// ---------------------------------------------------------------------------
// decomposition

struct SymmetryDecomposition {
  TensorField plus, zero, minus;  // the three lifted summands
  Scalar c;                       // coefficient of k (conformal mode)
  ProjectiveSolution v, w, alpha;  // extracted base data
};

namespace detail {
// mu^a_b Dt_a v^b - (1/n) Dt_c v^c
inline Scalar k_content_scalar(const PWGeometry& P, const TensorField& v_up) {
  int d = P.dim();
  TensorField Dv = P.covd(v_up);
  Scalar out;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Scalar muud;
      for (int c = 0; c < d; ++c) muud += P.ginv().at({a, c}) * P.mu_dn().at({c, b});
      if (!muud.is_zero()) out += muud * Dv.at({a, b});
    }
  Scalar div;
  for (int a = 0; a < d; ++a) div += Dv.at({a, a});
  return out - Scalar(Rat(1, P.n())) * div;
}
}  // namespace detail

inline SymmetryDecomposition decompose_symmetry(const PWGeometry& P, const TensorField& v_up,
                                                LiftMode mode) {
  const Chart& ch = *P.chart();
  const AffineConnection& D = P.base();
  int n = P.n();
  CKData ck = ck_data(P, v_up);
  if (mode == LiftMode::Conformal ? !ck.conformal_residual.is_zero()
                                  : !ck.killing_residual.is_zero())
    throw Error("decompose_symmetry: residual nonzero for the requested mode");
  // frame components: v^a = vA h_A + alpha_A v^A
  std::vector<Scalar> vA(n), alphaA(n);
  for (int A = 0; A < n; ++A) vA[A] = v_up.at({A});
  for (int B = 0; B < n; ++B) {
    Scalar a = v_up.at({n + B});
    for (int A = 0; A < n; ++A)
      for (int C = 0; C < n; ++C) a -= vA[A] * D.G(A, C, B) * Scalar::var(ch.pvar(C));
    alphaA[B] = a;
  }
  auto grade = [&](const Scalar& s, int deg) {
    if (s.den().degree_in_range(n, 2 * n) != 0)
      throw Error("decompose_symmetry: components not polynomial in the fiber variables");
    return Scalar(s.num().grade_part(n, 2 * n, deg), s.den());
  };
  for (int A = 0; A < n; ++A) {
    if (vA[A].is_polynomial() && vA[A].num().degree_in_range(n, 2 * n) > 1)
      throw Error("decompose_symmetry: horizontal part has fiber degree above one");
    if (alphaA[A].is_polynomial() && alphaA[A].num().degree_in_range(n, 2 * n) > 2)
      throw Error("decompose_symmetry: vertical part has fiber degree above two");
  }
  auto assemble = [&](int r) {
    // frame piece of homogeneity (r, r+1), back in coordinates
    TensorField out(P.chart(), {Space::MtUp});
    for (int A = 0; A < n; ++A) {
      Scalar h = r >= 0 ? grade(vA[A], r) : Scalar();
      out.at({A}) = h;
      Scalar pval = grade(alphaA[A], r + 1);
      for (int B = 0; B < n; ++B) {
        Scalar hB = r >= 0 ? grade(vA[B], r) : Scalar();
        if (hB.is_zero()) continue;
        for (int C = 0; C < n; ++C) pval += hB * D.G(B, C, A) * Scalar::var(ch.pvar(C));
      }
      out.at({n + A}) = pval;
    }
    return out;
  };
  TensorField piece_minus = assemble(-1);
  TensorField piece_zero = assemble(0);
  TensorField piece_plus = assemble(1);
  if (v_up != piece_minus + piece_zero + piece_plus)
    throw Error("decompose_symmetry: grading does not reassemble the field");
  // split c k out of the homogeneity-zero piece
  Scalar c;
  if (mode == LiftMode::Conformal) {
    Scalar s = detail::k_content_scalar(P, piece_zero);
    if (!s.is_constant())
      throw Error("decompose_symmetry: k-content scalar is not constant");
    c = Scalar(-1) * s / Scalar(2 * (n + 1));
    TensorField ck_part(P.chart(), {Space::MtUp});
    for (int A = 0; A < n; ++A) ck_part.at({n + A}) = Scalar(2) * c * Scalar::var(ch.pvar(A));
    piece_zero = piece_zero - ck_part;
  }
  // extract base data per the stated formulas
  SymmetryDecomposition out{piece_plus, piece_zero, piece_minus, c,
                            ProjectiveSolution{}, ProjectiveSolution{}, ProjectiveSolution{}};
  // v^A = 1/2 chi^{aA} Dt_a (k_b vz^b)
  {
    Scalar kv;
    for (int B = 0; B < n; ++B)
      kv += Scalar(2) * Scalar::var(ch.pvar(B)) * piece_zero.at({B});
    TensorField v(P.chart(), {Space::MUp});
    for (int A = 0; A < n; ++A) v.at({A}) = Scalar(Rat(1, 2)) * kv.partial(ch.pvar(A));
    if (v.depends_on_p()) throw Error("decompose_symmetry: extracted v depends on the fibers");
    out.v = make_solution(mode == LiftMode::Conformal ? SolKind::ProjectiveSymmetry
                                                      : SolKind::AffineSymmetry,
                          std::move(v));
  }
  // w^{AB} = chi^{aA} chi_b^B Dt_a vplus^b  (the exact round trip fixes the constant)
  {
    TensorField Dvp = P.covd(piece_plus);
    TensorField w(P.chart(), {Space::MUp, Space::MUp});
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B) w.at({A, B}) = Dvp.at({n + A, B});
    if (w.depends_on_p()) throw Error("decompose_symmetry: extracted w depends on the fibers");
    if (!sym2(w, 0, 1).is_zero())
      throw Error("decompose_symmetry: extracted w is not antisymmetric");
    out.w = make_solution(SolKind::Bivector, std::move(w));
  }
  // alpha_A = etacheck_{aA} vminus^a
  {
    TensorField alpha(P.chart(), {Space::MDown});
    for (int A = 0; A < n; ++A) {
      Scalar val;
      for (int a = 0; a < P.dim(); ++a) val += P.eta_dn().at({a, A}) * piece_minus.at({a});
      alpha.at({A}) = val;
    }
    if (alpha.depends_on_p())
      throw Error("decompose_symmetry: extracted alpha depends on the fibers");
    out.alpha = make_solution(SolKind::KillingOneForm, std::move(alpha));
  }
  // re-verify every extracted object against its equation and rebuild the lifts
  if (!piece_zero.is_zero() || !out.v.data.is_zero()) {
    Residual r = solution_residual(D, out.v);
    if (!r.main.is_zero()) throw Error("decompose_symmetry: extracted v fails its equation");
    if (lift_symmetry(P, out.v, mode) != piece_zero)
      throw Error("decompose_symmetry: zero-piece does not match the lift of v");
    if (mode == LiftMode::Killing) {
      // the k-content of a metric lift must be 2n psi
      Scalar s = detail::k_content_scalar(P, piece_zero);
      ProjectiveSolution pv = prolong(D, out.v);
      if (s != Scalar(2 * n) * pv.prolongation->psi->at({}))
        throw Error("decompose_symmetry: metric-mode k-content check failed");
    }
  }
  if (!piece_plus.is_zero() || !out.w.data.is_zero()) {
    if (lift_symmetry(P, out.w, mode) != piece_plus)
      throw Error("decompose_symmetry: plus-piece does not match the lift of w");
  }
  if (!piece_minus.is_zero() || !out.alpha.data.is_zero()) {
    if (lift_symmetry(P, out.alpha, mode) != piece_minus)
      throw Error("decompose_symmetry: minus-piece does not match the lift of alpha");
  }
  return out;
}

// ---------------------------------------------------------------------------
// light-like / geodetic criteria for lifts of symmetries

struct LightlikeReport {
  Scalar norm;                 // g(v0, v0)
  TensorField criterion;       // v^B D_B v^A - (mode factor)(D_C v^C) v^A
  bool equivalent;             // (norm == 0) iff (criterion == 0)
};

inline LightlikeReport lightlike_geodetic(const PWGeometry& P, const ProjectiveSolution& base,
                                          LiftMode mode) {
  const AffineConnection& D = P.base();
  int n = P.n();
  TensorField v0 = lift_symmetry(P, base, mode);
  // L_k of the zero-lift vanishes by construction; keep the check cheap
  if (!lie_k_vector(P, v0).is_zero())
    throw Error("lightlike_geodetic: lift is not homogeneity-neutral");
  Scalar norm;
  for (int a = 0; a < P.dim(); ++a)
    for (int b = 0; b < P.dim(); ++b) {
      const Scalar& gab = P.g().at({a, b});
      if (!gab.is_zero()) norm += gab * v0.at({a}) * v0.at({b});
    }
  TensorField Dv = covd(D, base.data);
  TensorField crit = contract(outer(base.data, Dv), 0, 1);  // v^B D_B v^A
  if (mode == LiftMode::Conformal) {
    Scalar div;
    for (int A = 0; A < n; ++A) div += Dv.at({A, A});
    crit.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
      val -= Scalar(Rat(2, n + 1)) * div * base.data.at({i[0]});
    });
  }
  return {norm, crit, norm.is_zero() == crit.is_zero()};
}

// ---------------------------------------------------------------------------
// invariance of the lifts under the change to another special connection

inline bool lift_invariance_check(const AffineConnection& D, const Scalar& s,
                                  const ProjectiveSolution& sol, LiftMode mode) {
  if (!certify_positive(s))
    throw Error("lift_invariance_check: scale must be a certified-positive polynomial");
  const Chart& ch = *D.chart;
  int n = D.n;
  PWGeometry P(D);
  TensorField ups(D.chart, {Space::MDown});
  for (int A = 0; A < n; ++A) ups.at({A}) = s.partial(ch.xvar(A)) / s;
  AffineConnection Dh = projective_change(D, ups);
  TensorField original = lift_symmetry(P, sol, mode);
  // transformed data, expressed in the hatted trivialization (weight w picks up s^w)
  ProjectiveSolution hat = sol;
  Scalar s2 = s * s;
  switch (sol.kind) {
    case SolKind::ProjectiveSymmetry:
    case SolKind::AffineSymmetry: {
      ProjectiveSolution pr = sol.prolongation ? sol : prolong(D, sol);
      Scalar upsv;
      for (int A = 0; A < n; ++A) upsv += ups.at({A}) * sol.data.at({A});
      TensorField phihat = *pr.prolongation->phi;
      phihat.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
        int A = i[0], B = i[1];
        if (A == B) val -= Scalar(Rat(1, n)) * upsv;
        val += ups.at({A}) * sol.data.at({B});
      });
      TensorField psihat = *pr.prolongation->psi;
      psihat.at({}) += Scalar(Rat(n + 1, n)) * upsv;
      Prolongation pro;
      pro.phi = std::move(phihat);
      pro.psi = std::move(psihat);
      pro.beta = pr.prolongation->beta;
      hat.prolongation = std::move(pro);
      break;
    }
    case SolKind::Bivector: {
      ProjectiveSolution pr = sol.prolongation ? sol : prolong(D, sol);
      TensorField what = (Scalar(1) / s2) * sol.data;
      TensorField nuhat = *pr.prolongation->nu;
      nuhat.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
        for (int B = 0; B < n; ++B) val -= sol.data.at({i[0], B}) * ups.at({B});
        val = val / s2;
      });
      hat.data = std::move(what);
      Prolongation pro;
      pro.nu = std::move(nuhat);
      hat.prolongation = std::move(pro);
      break;
    }
    case SolKind::KillingOneForm:
      hat.data = s2 * sol.data;
      break;
    default:
      throw Error("lift_invariance_check: kind does not induce a symmetry lift");
  }
  // the hatted lift, assembled over Dh in the hatted fiber coordinates
  TensorField lifted_hat(D.chart, {Space::MtUp});
  {
    // same formulas with Gammahat and phat-variables in place of p
    auto pvar = [&](int A) { return Scalar::var(ch.pvar(A)); };
    switch (hat.kind) {
      case SolKind::ProjectiveSymmetry:
      case SolKind::AffineSymmetry: {
        const TensorField& phi = *hat.prolongation->phi;
        Scalar psi = hat.prolongation->psi->at({});
        Scalar kcoef = mode == LiftMode::Conformal
                           ? Scalar(Rat(n - 1, 2 * (n + 1))) * psi
                           : Scalar(Rat(-1, 2)) * psi;
        for (int A = 0; A < n; ++A) {
          lifted_hat.at({A}) = hat.data.at({A});
          Scalar pval = Scalar(2) * kcoef * pvar(A);
          for (int B = 0; B < n; ++B) {
            for (int C = 0; C < n; ++C)
              pval += hat.data.at({B}) * Dh.G(B, C, A) * pvar(C);
            pval -= phi.at({A, B}) * pvar(B);
          }
          lifted_hat.at({n + A}) = pval;
        }
        break;
      }
      case SolKind::Bivector: {
        const TensorField& nu = *hat.prolongation->nu;
        Scalar nup;
        if (mode == LiftMode::Conformal)
          for (int B = 0; B < n; ++B) nup += nu.at({B}) * pvar(B);
        for (int A = 0; A < n; ++A) {
          Scalar xval;
          for (int B = 0; B < n; ++B) xval += hat.data.at({B, A}) * pvar(B);
          lifted_hat.at({A}) = xval;
          Scalar pval = -nup * pvar(A);
          for (int B = 0; B < n; ++B) {
            Scalar wB;
            for (int C = 0; C < n; ++C) wB += hat.data.at({C, B}) * pvar(C);
            if (wB.is_zero()) continue;
            for (int E = 0; E < n; ++E) pval += wB * Dh.G(B, E, A) * pvar(E);
          }
          lifted_hat.at({n + A}) = pval;
        }
        break;
      }
      case SolKind::KillingOneForm:
        for (int A = 0; A < n; ++A) lifted_hat.at({n + A}) = hat.data.at({A});
        break;
      default:
        break;
    }
  }
  TensorField pulled = pullback_vector_fiber_scaling(lifted_hat, s, 2, ch);
  return pulled == original;
}

}  // namespace pwlab
