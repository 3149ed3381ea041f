// Almost Einstein scales on the extension: the defining residual, the two
// lifts from base data (Ricci-flat scales and Euler-type fields), and the
// eigen-decomposition along the homothety k with extraction of the base data.

#pragma once

#include "pwlab/pw.hpp"

namespace pwlab {

// second covariant derivative of a scalar density of weight one; the
// representative metric has parallel coordinate volume, so the weight term drops
inline TensorField scale_hessian(const PWGeometry& P, const Scalar& sigma) {
  int d = P.dim();
  const TensorField& chr = P.christoffel();
  TensorField out(P.chart(), {Space::MtDown, Space::MtDown}, 0, 1);
  out.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int a = i[0], b = i[1];
    v = sigma.partial(a).partial(b);
    for (int c = 0; c < d; ++c) {
      const Scalar& g = chr.at({a, c, b});
      if (!g.is_zero()) v -= g * sigma.partial(c);
    }
  });
  return out;
}

// trace-free part of (Dt_(a Dt_b) + Pt_ab) sigma
inline TensorField aes_residual(const PWGeometry& P, const Scalar& sigma) {
  int d = P.dim();
  TensorField T = scale_hessian(P, sigma);
  const TensorField& Pt = P.intrinsic().schouten;
  T.for_each_mut([&](const std::vector<int>& i, Scalar& v) { v += Pt.at({i[0], i[1]}) * sigma; });
  Scalar tr;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) tr += P.ginv().at({a, b}) * T.at({a, b});
  T.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    v -= Scalar(Rat(1, d)) * tr * P.g().at({i[0], i[1]});
  });
  return T;
}

// lift of a Ricci-flat scale: the pullback, constant along the fibers
inline Scalar lift_minus(const PWGeometry& P, const ProjectiveSolution& sigma) {
  if (sigma.kind != SolKind::RicciFlatScale) throw Error("lift_minus: expected a Ricci-flat scale");
  if (!solution_residual(P.base(), sigma).main.is_zero())
    throw Error("lift_minus: base scale equation residual nonzero");
  return sigma.data.at({});
}

// lift of an Euler-type field: sigma_+ = xi^A p_A
inline Scalar lift_plus(const PWGeometry& P, const ProjectiveSolution& xi) {
  if (xi.kind != SolKind::EulerField) throw Error("lift_plus: expected an euler-field");
  Residual r = solution_residual(P.base(), xi);
  if (!r.main.is_zero()) throw Error("lift_plus: euler equation residual nonzero");
  for (const auto& [name, t] : r.aux)
    if (!t.is_zero()) throw Error("lift_plus: integrability violated (" + name + ")");
  Scalar out;
  const Chart& ch = *P.chart();
  for (int A = 0; A < P.n(); ++A) out += xi.data.at({A}) * Scalar::var(ch.pvar(A));
  return out;
}

// the two blocks whose separate vanishing makes the plus-lift Einstein:
// the prolonged euler identity and the Weyl integrability contraction
struct PlusSummands {
  TensorField prolonged;  // D_(A D_B) xi^C + delta_(A^C P_B)D xi^D
  TensorField weyl;       // xi^D W_DA^C_B
};

inline PlusSummands lift_plus_summands(const AffineConnection& D, const ProjectiveSolution& xi) {
  BaseCurvature c = curvature(D);
  int n = D.n;
  TensorField DDxi = sym2(covd(D, covd(D, xi.data)), 0, 1);
  DDxi.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], B = i[1], C = i[2];
    Scalar t;
    for (int Dd = 0; Dd < n; ++Dd) {
      if (C == A) t += Scalar(Rat(1, 2)) * c.schouten.at({B, Dd}) * xi.data.at({Dd});
      if (C == B) t += Scalar(Rat(1, 2)) * c.schouten.at({A, Dd}) * xi.data.at({Dd});
    }
    v += t;
  });
  TensorField W = projective_weyl_cotton(D).weyl;
  TensorField wcon = contract(outer(xi.data, W), 0, 1);
  return {std::move(DDxi), std::move(wcon)};
}

struct ScaleDecomposition {
  Scalar plus, minus;
  ProjectiveSolution xi;     // euler-field extracted from the plus part
  ProjectiveSolution sigma;  // Ricci-flat scale extracted from the minus part
};

inline ScaleDecomposition decompose_scale(const PWGeometry& P, const Scalar& sigma_t) {
  const Chart& ch = *P.chart();
  int n = P.n();
  if (!aes_residual(P, sigma_t).is_zero())
    throw Error("decompose_scale: not an almost Einstein scale");
  if (sigma_t.den().degree_in_range(n, 2 * n) != 0)
    throw Error("decompose_scale: scale not polynomial in the fiber variables");
  // the fiber Hessian vanishes for Einstein scales, so the fiber degree is at most one
  if (sigma_t.num().degree_in_range(n, 2 * n) > 1)
    throw Error("decompose_scale: fiber degree exceeds one");
  Scalar plus(sigma_t.num().grade_part(n, 2 * n, 1), sigma_t.den());
  Scalar minus(sigma_t.num().grade_part(n, 2 * n, 0), sigma_t.den());
  // xi^A = chi^{aA} Dt_a sigma_+ = d sigma_+ / dp_A
  TensorField xi(P.chart(), {Space::MUp});
  for (int A = 0; A < n; ++A) xi.at({A}) = plus.partial(ch.pvar(A));
  if (xi.depends_on_p()) throw Error("decompose_scale: extracted field depends on the fibers");
  ScaleDecomposition out{plus, minus, make_solution(SolKind::EulerField, std::move(xi)),
                         make_solution(SolKind::RicciFlatScale,
                                       TensorField::scalar(P.chart(), minus))};
  // re-verify the base equations and the eigenvalues
  Residual re = solution_residual(P.base(), out.xi);
  if (!re.all_zero()) throw Error("decompose_scale: extracted euler field fails its equation");
  if (!solution_residual(P.base(), out.sigma).main.is_zero())
    throw Error("decompose_scale: extracted scale fails its equation");
  if (P.lie_k_density(plus, 1) != plus || P.lie_k_density(minus, 1) != -minus)
    throw Error("decompose_scale: eigenvalue verification failed");
  return out;
}

// trace of the rescaled Rho tensor with denominators cleared:
// sigma * (Laplacian sigma) - n g^{ab} d_a sigma d_b sigma; zero for Einstein scales
inline Scalar einstein_trace_identity(const PWGeometry& P, const Scalar& sigma) {
  int d = P.dim();
  TensorField H = scale_hessian(P, sigma);
  Scalar lap, grad2;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Scalar& gi = P.ginv().at({a, b});
      if (gi.is_zero()) continue;
      lap += gi * H.at({a, b});
      grad2 += gi * sigma.partial(a) * sigma.partial(b);
    }
  return sigma * lap - Scalar(P.n()) * grad2;
}

// k^a k^b Dt_a Dt_b sigma, an exact zero for every Einstein scale
inline Scalar kk_hessian(const PWGeometry& P, const Scalar& sigma) {
  TensorField H = scale_hessian(P, sigma);
  Scalar out;
  int d = P.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Scalar &ka = P.k_up().at({a}), &kb = P.k_up().at({b});
      if (ka.is_zero() || kb.is_zero()) continue;
      out += ka * kb * H.at({a, b});
    }
  return out;
}

}  // namespace pwlab
