// Overdetermined projectively invariant equations on M, their residuals,
// prolongations and the n=2 / n=3 dualities through the weighted volume form.
//
// Solution kinds and weights:
//   euler-field         xi^A   in E^A(-1):   D_A xi^B - (1/n) delta_A^B D_C xi^C = 0
//   ricciflat-scale     sigma  in E(1):      (D_(A D_B) + P_AB) sigma = 0
//   bivector            w^AB   in E^[AB](-2): D_C w^AB + 2/(n-1) delta_C^[A D_D w^B]D = 0
//   killing-oneform     alpha_A in E_A(2):   D_(A alpha_B) = 0
//   projective-symmetry v^A:   (D_(A D_B) v^C + P_AB v^C + v^D W_D(A^C_B))_0 = 0
//   affine-symmetry     v^A:    D_A D_B v^C + v^D R_DA^C_B = 0

#pragma once

#include "pwlab/connection.hpp"
#include "pwlab/linalg.hpp"

namespace pwlab {

enum class SolKind {
  EulerField,
  RicciFlatScale,
  Bivector,
  KillingOneForm,
  ProjectiveSymmetry,
  AffineSymmetry,
};

inline const char* kind_name(SolKind k) {
  switch (k) {
    case SolKind::EulerField: return "euler-field";
    case SolKind::RicciFlatScale: return "ricciflat-scale";
    case SolKind::Bivector: return "bivector";
    case SolKind::KillingOneForm: return "killing-oneform";
    case SolKind::ProjectiveSymmetry: return "projective-symmetry";
    case SolKind::AffineSymmetry: return "affine-symmetry";
  }
  return "?";
}

inline std::optional<SolKind> kind_from_name(const std::string& s) {
  for (SolKind k : {SolKind::EulerField, SolKind::RicciFlatScale, SolKind::Bivector,
                    SolKind::KillingOneForm, SolKind::ProjectiveSymmetry, SolKind::AffineSymmetry})
    if (s == kind_name(k)) return k;
  return std::nullopt;
}

inline int kind_pweight(SolKind k) {
  switch (k) {
    case SolKind::EulerField: return -1;
    case SolKind::RicciFlatScale: return 1;
    case SolKind::Bivector: return -2;
    case SolKind::KillingOneForm: return 2;
    case SolKind::ProjectiveSymmetry: return 0;
    case SolKind::AffineSymmetry: return 0;
  }
  return 0;
}

inline std::vector<Space> kind_slots(SolKind k) {
  switch (k) {
    case SolKind::EulerField: return {Space::MUp};
    case SolKind::RicciFlatScale: return {};
    case SolKind::Bivector: return {Space::MUp, Space::MUp};
    case SolKind::KillingOneForm: return {Space::MDown};
    case SolKind::ProjectiveSymmetry: return {Space::MUp};
    case SolKind::AffineSymmetry: return {Space::MUp};
  }
  return {};
}

struct Prolongation {
  std::optional<TensorField> phi;   // phi_A^B (trace-free for symmetries)
  std::optional<TensorField> psi;   // scalar
  std::optional<TensorField> beta;  // beta_A
  std::optional<TensorField> nu;    // nu^A (bivector case)
};

struct ProjectiveSolution {
  SolKind kind;
  TensorField data;
  std::optional<Prolongation> prolongation;
};

inline ProjectiveSolution make_solution(SolKind kind, TensorField data) {
  if (data.slots() != kind_slots(kind)) throw Error("solution: wrong shape for kind");
  if (data.depends_on_p()) throw Error("solution: data must live on M");
  if (kind == SolKind::Bivector && !sym2(data, 0, 1).is_zero())
    throw Error("solution: bivector must be antisymmetric");
  data.set_pw(kind_pweight(kind));
  return {kind, std::move(data), std::nullopt};
}

// trace adjustment used by the symmetry equation: (X_AB^C)_0 with X symmetric in A,B
inline TensorField tracefree_sym_ud(const TensorField& X, int n) {
  TensorField tau = contract(permute(X, {2, 0, 1}), 0, 1);  // X_{AB}^A indexed by B
  TensorField out = X;
  Scalar c = Scalar(Rat(1, n + 1));
  out.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], B = i[1], C = i[2];
    if (C == A) v -= c * tau.at({B});
    if (C == B) v -= c * tau.at({A});
  });
  return out;
}

struct Residual {
  TensorField main;
  std::vector<std::pair<std::string, TensorField>> aux;  // named integrability residuals

  bool all_zero() const {
    if (!main.is_zero()) return false;
    for (const auto& [k, t] : aux)
      if (!t.is_zero()) return false;
    return true;
  }
};

inline Residual solution_residual(const AffineConnection& D, const ProjectiveSolution& s) {
  if (s.data.pw() != kind_pweight(s.kind)) throw Error("solution_residual: weight mismatch");
  const int n = D.n;
  Residual out{TensorField(D.chart, {}), {}};
  switch (s.kind) {
    case SolKind::EulerField: {
      TensorField Dxi = covd(D, s.data);  // D_A xi^B
      TensorField div = contract(Dxi, 0, 1);
      TensorField res = Dxi;
      Scalar c = Scalar(Rat(1, n));
      res.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
        if (i[0] == i[1]) v -= c * div.at({});
      });
      out.main = std::move(res);
      TensorField W = projective_weyl_cotton(D).weyl;
      // xi^D W_DA^C_B
      TensorField intg = contract(outer(s.data, W), 0, 1);
      out.aux.emplace_back("euler_weyl_integrability", std::move(intg));
      break;
    }
    case SolKind::RicciFlatScale: {
      BaseCurvature c = curvature(D);
      TensorField DDs = covd(D, covd(D, s.data));
      out.main = sym2(DDs, 0, 1) + outer(c.schouten, s.data);
      break;
    }
    case SolKind::Bivector: {
      TensorField Dw = covd(D, s.data);  // D_C w^AB
      TensorField nu = Scalar(Rat(1, n - 1)) * contract(permute(Dw, {1, 0, 2}), 0, 1);
      nu.set_pw(-2);  // section of E^A(-2) built from D w
      TensorField res = Dw;
      res.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
        int C = i[0], A = i[1], B = i[2];
        if (C == A) v -= nu.at({B});
        if (C == B) v += nu.at({A});
      });
      out.main = std::move(res);
      TensorField W = projective_weyl_cotton(D).weyl;
      out.aux.emplace_back("bivector_weyl_integrability", [&] {
        // w^B(A W_B(C^D)_E)
        TensorField T(D.chart, {Space::MUp, Space::MUp, Space::MDown, Space::MDown}, -2);
        T.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
          int A = i[0], Dd = i[1], C = i[2], E = i[3];
          Scalar acc;
          for (int B = 0; B < n; ++B) {
            acc += s.data.at({B, A}) * W.at({B, C, Dd, E});
            acc += s.data.at({B, Dd}) * W.at({B, C, A, E});
            acc += s.data.at({B, A}) * W.at({B, E, Dd, C});
            acc += s.data.at({B, Dd}) * W.at({B, E, A, C});
          }
          v = Scalar(Rat(1, 4)) * acc;
        });
        return T;
      }());
      break;
    }
    case SolKind::KillingOneForm: {
      out.main = sym2(covd(D, s.data), 0, 1);
      break;
    }
    case SolKind::ProjectiveSymmetry: {
      BaseCurvature c = curvature(D);
      TensorField W = projective_weyl_cotton(D).weyl;
      TensorField DDv = sym2(covd(D, covd(D, s.data)), 0, 1);  // D_(A D_B) v^C
      TensorField X = DDv;
      X.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
        int A = i[0], B = i[1], C = i[2];
        v += c.schouten.at({A, B}) * s.data.at({C});
        Scalar wterm;
        for (int E = 0; E < n; ++E)
          wterm += s.data.at({E}) * (W.at({E, A, C, B}) + W.at({E, B, C, A}));
        v += Scalar(Rat(1, 2)) * wterm;
      });
      out.main = tracefree_sym_ud(X, n);
      break;
    }
    case SolKind::AffineSymmetry: {
      BaseCurvature c = curvature(D);
      TensorField DDv = covd(D, covd(D, s.data));  // D_A D_B v^C (not symmetrized)
      TensorField X = DDv;
      X.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
        int A = i[0], B = i[1], C = i[2];
        for (int E = 0; E < n; ++E) v += s.data.at({E}) * c.riemann.at({E, A, C, B});
      });
      out.main = std::move(X);
      break;
    }
  }
  return out;
}

// prolongation companions; checks closure of the prolonged system exactly
inline ProjectiveSolution prolong(const AffineConnection& D, const ProjectiveSolution& s) {
  Residual r = solution_residual(D, s);
  if (!r.main.is_zero()) throw Error("prolong: solution residual nonzero");
  const int n = D.n;
  ProjectiveSolution out = s;
  Prolongation pr;
  switch (s.kind) {
    case SolKind::ProjectiveSymmetry:
    case SolKind::AffineSymmetry: {
      BaseCurvature c = curvature(D);
      TensorField Dv = covd(D, s.data);
      TensorField div = contract(Dv, 0, 1);
      TensorField psi = Scalar(Rat(1, n)) * div;
      TensorField phi = Dv;
      phi.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
        if (i[0] == i[1]) v -= psi.at({});
      });
      // beta_A = -1/(n+1) D_A D_B v^B - P_AB v^B
      TensorField DDiv = covd(D, div);
      TensorField beta(D.chart, {Space::MDown});
      beta.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
        int A = i[0];
        v = Scalar(Rat(-1, n + 1)) * DDiv.at({A});
        for (int B = 0; B < n; ++B) v -= c.schouten.at({A, B}) * s.data.at({B});
      });
      pr.phi = std::move(phi);
      pr.psi = std::move(psi);
      pr.beta = std::move(beta);
      break;
    }
    case SolKind::Bivector: {
      TensorField Dw = covd(D, s.data);
      TensorField nu = Scalar(Rat(1, n - 1)) * contract(permute(Dw, {1, 0, 2}), 0, 1);
      nu.set_pw(-2);
      pr.nu = std::move(nu);
      break;
    }
    default:
      break;  // scale / one-form / euler carry no companions here
  }
  out.prolongation = std::move(pr);
  return out;
}

// residuals of the closed (prolonged) first-order system; all vanish for solutions
inline std::vector<std::pair<std::string, TensorField>> prolonged_system_residuals(
    const AffineConnection& D, const ProjectiveSolution& s) {
  if (!s.prolongation) throw Error("prolonged_system_residuals: call prolong first");
  const int n = D.n;
  const Prolongation& pr = *s.prolongation;
  std::vector<std::pair<std::string, TensorField>> out;
  BaseCurvature c = curvature(D);
  if (s.kind == SolKind::ProjectiveSymmetry) {
    TensorField W = projective_weyl_cotton(D).weyl;
    TensorField Y = projective_weyl_cotton(D).cotton;
    const TensorField &phi = *pr.phi, &psi = *pr.psi, &beta = *pr.beta;
    // D_A v^B = phi_A^B + delta psi
    TensorField r1 = covd(D, s.data);
    r1.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      v -= phi.at({i[0], i[1]});
      if (i[0] == i[1]) v -= psi.at({});
    });
    out.emplace_back("prolong_dv", std::move(r1));
    // D_A psi + (n+1)/n (beta_A + P_AB v^B) = 0
    TensorField r2 = covd(D, psi);
    r2.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int A = i[0];
      Scalar t = beta.at({A});
      for (int B = 0; B < n; ++B) t += c.schouten.at({A, B}) * s.data.at({B});
      v += Scalar(Rat(n + 1, n)) * t;
    });
    out.emplace_back("prolong_dpsi", std::move(r2));
    // D_(A phi_B)^C + P_AB v^C + v^D W_D(A^C_B) - (1/n) delta_(A^C (P_B)D v^D - (n-1) beta_B))
    TensorField Dphi = sym2(covd(D, phi), 0, 1);
    TensorField Pv(D.chart, {Space::MDown});
    Pv.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      for (int B = 0; B < n; ++B) v += c.schouten.at({i[0], B}) * s.data.at({B});
    });
    TensorField r3 = Dphi;
    r3.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int A = i[0], B = i[1], C = i[2];
      v += c.schouten.at({A, B}) * s.data.at({C});
      Scalar wterm;
      for (int E = 0; E < n; ++E)
        wterm += s.data.at({E}) * (W.at({E, A, C, B}) + W.at({E, B, C, A}));
      v += Scalar(Rat(1, 2)) * wterm;
      Scalar trA = Pv.at({B}) - Scalar(n - 1) * pr.beta->at({B});
      Scalar trB = Pv.at({A}) - Scalar(n - 1) * pr.beta->at({A});
      if (C == A) v -= Scalar(Rat(1, 2 * n)) * trA;
      if (C == B) v -= Scalar(Rat(1, 2 * n)) * trB;
    });
    out.emplace_back("prolong_dphi", std::move(r3));
    // D_A beta_B - P_AB psi - P_AC phi_B^C + 2 v^C D_[A P_C]B = 0
    TensorField r4 = covd(D, beta);
    r4.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int A = i[0], B = i[1];
      v -= c.schouten.at({A, B}) * psi.at({});
      for (int C = 0; C < n; ++C) {
        v -= c.schouten.at({A, C}) * phi.at({B, C});
        v += s.data.at({C}) * Y.at({B, A, C});
      }
    });
    out.emplace_back("prolong_dbeta", std::move(r4));
  } else if (s.kind == SolKind::AffineSymmetry) {
    const TensorField &phi = *pr.phi, &psi = *pr.psi;
    TensorField r1 = covd(D, s.data);
    r1.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      v -= phi.at({i[0], i[1]});
      if (i[0] == i[1]) v -= psi.at({});
    });
    out.emplace_back("prolong_dv", std::move(r1));
    TensorField r2 = covd(D, phi);
    r2.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int A = i[0], B = i[1], C = i[2];
      for (int E = 0; E < n; ++E) v += s.data.at({E}) * c.riemann.at({E, A, C, B});
    });
    out.emplace_back("prolong_dphi", std::move(r2));
    out.emplace_back("prolong_dpsi", covd(D, psi));
  } else if (s.kind == SolKind::Bivector) {
    const TensorField& nu = *pr.nu;
    TensorField W = projective_weyl_cotton(D).weyl;
    TensorField r1 = covd(D, s.data);
    r1.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int C = i[0], A = i[1], B = i[2];
      if (C == A) v -= nu.at({B});
      if (C == B) v += nu.at({A});
    });
    out.emplace_back("prolong_dw", std::move(r1));
    // D_A nu^B + P_AC w^CB + 1/(2(n-2)) w^CD W_CD^B_A = 0  (W term absent for n = 2)
    TensorField r2 = covd(D, nu);
    r2.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int A = i[0], B = i[1];
      for (int C = 0; C < n; ++C) v += c.schouten.at({A, C}) * s.data.at({C, B});
      if (n > 2) {
        Scalar wterm;
        for (int C = 0; C < n; ++C)
          for (int E = 0; E < n; ++E) wterm += s.data.at({C, E}) * W.at({C, E, B, A});
        v += Scalar(Rat(1, 2 * (n - 2))) * wterm;
      }
    });
    out.emplace_back("prolong_dnu", std::move(r2));
  }
  return out;
}

// n = 2 and n = 3 dualities through the weighted volume form
inline ProjectiveSolution dualize_lowdim(const AffineConnection& D, const ProjectiveSolution& s) {
  const int n = D.n;
  if (n != 2 && n != 3) throw Error("dualize_lowdim: only n = 2, 3");
  TensorField eps = levi_civita_down(D.chart, n + 1);
  TensorField eps_up = levi_civita_up(D.chart, -(n + 1));
  if (n == 2) {
    switch (s.kind) {
      case SolKind::EulerField: {
        // alpha_A = xi^B eps_BA
        TensorField a = contract(outer(s.data, eps), 0, 1);
        a.set_pw(2);
        return make_solution(SolKind::KillingOneForm, std::move(a));
      }
      case SolKind::KillingOneForm: {
        // xi^A = alpha_B eps^AB
        TensorField xi = contract(outer(s.data, permute(eps_up, {1, 0})), 0, 1);
        return make_solution(SolKind::EulerField, std::move(xi));
      }
      case SolKind::Bivector: {
        // sigma = 1/2 w^AB eps_AB
        TensorField sg = Scalar(Rat(1, 2)) * contract(contract(outer(s.data, eps), 0, 2), 0, 1);
        return make_solution(SolKind::RicciFlatScale, std::move(sg));
      }
      case SolKind::RicciFlatScale: {
        // w^AB = sigma eps^AB
        return make_solution(SolKind::Bivector, outer(s.data, eps_up));
      }
      default:
        throw Error("dualize_lowdim: kind not dualizable for n = 2");
    }
  }
  // n == 3
  switch (s.kind) {
    case SolKind::Bivector: {
      // alpha_A = 1/2 w^BC eps_BCA
      TensorField a = Scalar(Rat(1, 2)) * contract(contract(outer(s.data, eps), 1, 3), 0, 1);
      a.set_pw(2);
      return make_solution(SolKind::KillingOneForm, std::move(a));
    }
    case SolKind::KillingOneForm: {
      // w^AB = alpha_C eps^CAB
      TensorField w = contract(outer(s.data, eps_up), 0, 1);
      w.set_pw(-2);
      return make_solution(SolKind::Bivector, std::move(w));
    }
    default:
      throw Error("dualize_lowdim: kind not dualizable for n = 3");
  }
}

// all polynomial solutions of total degree <= deg_bound, as a basis
inline std::vector<ProjectiveSolution> solve_polynomial(const AffineConnection& D, SolKind kind,
                                                        int deg_bound,
                                                        bool require_integrability = false) {
  const Chart& ch = *D.chart;
  const int n = D.n;
  // monomial basis in x-variables
  std::vector<Mono> monos;
  {
    std::function<void(int, int, Mono)> rec = [&](int v, int rem, Mono m) {
      if (v == n) {
        monos.push_back(m);
        return;
      }
      for (int e = 0; e <= rem; ++e) {
        Mono mm = m;
        mm.e[ch.xvar(v)] = static_cast<uint8_t>(e);
        rec(v + 1, rem - e, mm);
      }
    };
    rec(0, deg_bound, Mono{});
  }
  auto shape = kind_slots(kind);
  TensorField proto(D.chart, shape, kind_pweight(kind));
  size_t ncomp = proto.size();
  // unknowns: (component, monomial); for bivectors only the upper triangle
  std::vector<std::pair<size_t, Mono>> unknowns;
  for (size_t c = 0; c < ncomp; ++c) {
    if (kind == SolKind::Bivector) {
      size_t A = c / n, B = c % n;
      if (A >= B) continue;
    }
    for (const auto& m : monos) unknowns.emplace_back(c, m);
  }
  // rows: coefficient of each (residual group, component, monomial) triple
  struct RowKey {
    int group;
    size_t comp;
    Mono m;
    bool operator<(const RowKey& o) const {
      if (group != o.group) return group < o.group;
      if (comp != o.comp) return comp < o.comp;
      if (!(m == o.m)) return mono_before(m, o.m);
      return false;
    }
  };
  std::map<RowKey, size_t> row_ids;
  std::vector<std::vector<Coeff>> rows;
  auto add_residual = [&](int group, const TensorField& res, size_t col) {
    size_t base = 0;
    res.for_each([&](const std::vector<int>&, const Scalar& v) {
      if (!v.is_zero()) {
        if (!v.is_polynomial()) throw Error("solve_polynomial: non-polynomial residual");
        for (const auto& t : v.num().terms()) {
          RowKey key{group, base, t.m};
          auto [it, fresh] = row_ids.try_emplace(key, rows.size());
          if (fresh) rows.emplace_back(unknowns.size(), Coeff(0));
          rows[it->second][col] += t.c;
        }
      }
      ++base;
    });
  };
  for (size_t u = 0; u < unknowns.size(); ++u) {
    TensorField basis = proto;
    basis.flat(unknowns[u].first) = Scalar(mono_poly(unknowns[u].second, Coeff(1)));
    if (kind == SolKind::Bivector) {
      size_t A = unknowns[u].first / n, B = unknowns[u].first % n;
      basis.flat(B * n + A) = -basis.flat(unknowns[u].first);
    }
    ProjectiveSolution sol{kind, basis, std::nullopt};
    Residual r = solution_residual(D, sol);
    add_residual(0, r.main, u);
    if (require_integrability) {
      int group = 1;
      for (const auto& [name, t] : r.aux) add_residual(group++, t, u);
    }
  }
  std::vector<ProjectiveSolution> out;
  for (const auto& v : nullspace(rows, unknowns.size())) {
    TensorField sol = proto;
    for (size_t u = 0; u < unknowns.size(); ++u) {
      if (v[u].is_zero()) continue;
      sol.flat(unknowns[u].first) += Scalar(mono_poly(unknowns[u].second, v[u]));
    }
    if (kind == SolKind::Bivector)
      for (int A = 0; A < n; ++A)
        for (int B = 0; B < A; ++B) sol.at({A, B}) = -sol.at({B, A});
    out.push_back(ProjectiveSolution{kind, std::move(sol), std::nullopt});
  }
  return out;
}

}  // namespace pwlab
