// Affine/projective calculus on the base manifold M: covariant derivatives on
// weighted tensors, curvature, Schouten, projective Weyl and Cotton tensors,
// projective changes, special connections and Thomas parameters.
//
// Conventions, fixed once:
//   R_AB^C_D v^D = 2 D_[A D_B] v^C
//   Ric_AB = R_PA^P_B,  P_AB = Ric_AB / (n-1)
//   W_AB^C_D = R_AB^C_D + P_AD delta^C_B - P_BD delta^C_A
//   Y_CAB = 2 D_[A P_B]C
// Projective weight w adds  (w/(n+1)) Gamma_A^E_E  to the derivative, which is
// exactly what makes the weighted volume form parallel for every connection.

#pragma once

#include "pwlab/tensor.hpp"

namespace pwlab {

struct AffineConnection {
  ChartPtr chart;
  int n = 0;
  TensorField gamma;   // Gamma_A^C_B, slots (MDown, MUp, MDown), x-dependent
  TensorField volume;  // eps_{A1..An}, totally antisymmetric, one nonzero component

  const Scalar& G(int A, int C, int B) const { return gamma.at({A, C, B}); }
};

inline AffineConnection make_connection(ChartPtr chart, TensorField gamma,
                                        std::optional<TensorField> volume = std::nullopt) {
  AffineConnection D;
  D.chart = chart;
  D.n = chart->n;
  if (gamma.slots() != std::vector<Space>{Space::MDown, Space::MUp, Space::MDown})
    throw Error("connection: gamma must have slots (down, up, down)");
  if (gamma.depends_on_p()) throw Error("connection: gamma must not depend on fiber variables");
  if (!symmetrize(gamma, {0, 2}, true).is_zero())
    throw Error("connection: gamma not symmetric (torsion)");
  D.gamma = std::move(gamma);
  if (volume) {
    if (volume->slots() != std::vector<Space>(chart->n, Space::MDown))
      throw Error("connection: volume must be an n-form");
    if (*volume != symmetrize(*volume, [&] {
          std::vector<int> g(chart->n);
          std::iota(g.begin(), g.end(), 0);
          return g;
        }(), true))
      throw Error("connection: volume not totally antisymmetric");
    if (volume->depends_on_p()) throw Error("connection: volume must not depend on fiber variables");
    std::vector<int> first(chart->n);
    std::iota(first.begin(), first.end(), 0);
    if (volume->atv(first).is_zero()) throw Error("connection: degenerate volume form");
    D.volume = std::move(*volume);
  } else {
    D.volume = levi_civita_down(chart);
  }
  return D;
}

inline AffineConnection flat_connection(ChartPtr chart) {
  return make_connection(chart,
                         TensorField(chart, {Space::MDown, Space::MUp, Space::MDown}));
}

// Gamma_A^C_C as a one-form
inline TensorField gamma_trace(const AffineConnection& D) {
  return contract(D.gamma, 1, 2);
}

// covariant derivative on M; prepends the derivative slot, consumes pw
inline TensorField covd(const AffineConnection& D, const TensorField& T) {
  for (auto s : T.slots())
    if (!on_base(s)) throw Error("covd: tensor has total-space slots");
  int n = D.n;
  TensorField out = coordinate_partial(T, true);
  TensorField gtr = gamma_trace(D);
  Scalar wfac = Scalar(Rat(T.pw(), n + 1));
  std::vector<int> src(T.rank());
  out.for_each_mut([&](const std::vector<int>& idx, Scalar& val) {
    int A = idx[0];
    for (int k = 0; k < T.rank(); ++k) src[k] = idx[k + 1];
    for (int k = 0; k < T.rank(); ++k) {
      int held = src[k];
      if (is_up(T.slots()[k])) {
        for (int E = 0; E < n; ++E) {
          const Scalar& g = D.G(A, held, E);
          if (g.is_zero()) continue;
          src[k] = E;
          val += g * T.atv(src);
        }
      } else {
        for (int E = 0; E < n; ++E) {
          const Scalar& g = D.G(A, E, held);
          if (g.is_zero()) continue;
          src[k] = E;
          val -= g * T.atv(src);
        }
      }
      src[k] = held;
    }
    if (T.pw() != 0 && !gtr.at({A}).is_zero()) val += wfac * gtr.at({A}) * T.atv(src);
  });
  return out;
}

struct BaseCurvature {
  TensorField riemann;   // R_AB^C_D, slots (down, down, up, down)
  TensorField ricci;     // Ric_AB
  TensorField schouten;  // P_AB
};

inline BaseCurvature curvature(const AffineConnection& D) {
  if (D.n < 2) throw Error("curvature: need n >= 2");
  const Chart& ch = *D.chart;
  int n = D.n;
  TensorField R(D.chart, {Space::MDown, Space::MDown, Space::MUp, Space::MDown});
  for (int A = 0; A < n; ++A)
    for (int B = A + 1; B < n; ++B)
      for (int C = 0; C < n; ++C)
        for (int E = 0; E < n; ++E) {
          Scalar v = D.G(B, C, E).partial(ch.xvar(A)) - D.G(A, C, E).partial(ch.xvar(B));
          for (int F = 0; F < n; ++F)
            v += D.G(A, C, F) * D.G(B, F, E) - D.G(B, C, F) * D.G(A, F, E);
          R.at({A, B, C, E}) = v;
          R.at({B, A, C, E}) = -v;
        }
  BaseCurvature out;
  out.ricci = contract(permute(R, {2, 0, 1, 3}), 0, 1);  // R_PA^P_B
  out.schouten = Scalar(Rat(1, n - 1)) * out.ricci;
  out.riemann = std::move(R);
  return out;
}

inline bool is_special(const AffineConnection& D) {
  return covd(D, D.volume).is_zero();
}

struct WeylCotton {
  TensorField weyl;    // W_AB^C_D
  TensorField cotton;  // Y_CAB
};

inline WeylCotton projective_weyl_cotton(const AffineConnection& D) {
  BaseCurvature c = curvature(D);
  if (c.schouten != sym2(c.schouten, 0, 1))
    throw Error("projective_weyl_cotton: Schouten tensor asymmetric (connection not special)");
  TensorField W = c.riemann;
  W.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], B = i[1], C = i[2], E = i[3];
    if (C == B) v += c.schouten.at({A, E});
    if (C == A) v -= c.schouten.at({B, E});
  });
  TensorField DP = covd(D, c.schouten);  // D_X P_{BC}
  TensorField Y(D.chart, {Space::MDown, Space::MDown, Space::MDown});
  Y.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int C = i[0], A = i[1], B = i[2];
    v = DP.at({A, B, C}) - DP.at({B, A, C});
  });
  return {std::move(W), std::move(Y)};
}

// totally trace-free part of R for an arbitrary torsion-free connection; the
// Rho tensor picks up an antisymmetric part away from special connections:
//   P_AB = Ric_(AB)/(n-1) + Ric_[AB]/(n+1),
//   W = R - 2 delta^C_[A P_B]D + 2 P_[AB] delta^C_D
inline TensorField projective_weyl_any(const AffineConnection& D) {
  BaseCurvature c = curvature(D);
  int n = D.n;
  TensorField P(D.chart, {Space::MDown, Space::MDown});
  P.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], B = i[1];
    v = Scalar(Rat(1, 2 * (n - 1))) * (c.ricci.at({A, B}) + c.ricci.at({B, A})) +
        Scalar(Rat(1, 2 * (n + 1))) * (c.ricci.at({A, B}) - c.ricci.at({B, A}));
  });
  TensorField W = c.riemann;
  W.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], B = i[1], C = i[2], E = i[3];
    if (C == A) v -= P.at({B, E});
    if (C == B) v += P.at({A, E});
    if (C == E) v += P.at({A, B}) - P.at({B, A});
  });
  return W;
}

// Gammahat = Gamma + delta_A^C Ups_B + delta_B^C Ups_A; the volume form is kept
inline AffineConnection projective_change(const AffineConnection& D, const TensorField& ups) {
  if (ups.slots() != std::vector<Space>{Space::MDown})
    throw Error("projective_change: Upsilon must be a one-form on M");
  if (ups.depends_on_p()) throw Error("projective_change: Upsilon must not depend on fiber variables");
  TensorField g = D.gamma;
  g.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], C = i[1], B = i[2];
    if (C == A) v += ups.at({B});
    if (C == B) v += ups.at({A});
  });
  AffineConnection out = D;
  out.gamma = std::move(g);
  return out;
}

// the one-form moving D to the special connection preserving its volume form,
// and that special connection
inline std::pair<TensorField, AffineConnection> special_part(const AffineConnection& D) {
  int n = D.n;
  std::vector<int> first(n);
  std::iota(first.begin(), first.end(), 0);
  Scalar f = D.volume.atv(first);
  if (f.is_zero()) throw Error("special_part: degenerate volume form");
  TensorField eps_up = (Scalar(1) / f) * levi_civita_up(D.chart);
  TensorField Deps = covd(D, D.volume);  // slots (A, B1..Bn)
  TensorField acc = outer(Deps, eps_up);
  // contract B1..Bn (slots 1..n) against the eps_up slots (n+1..2n)
  for (int k = 0; k < n; ++k) acc = contract(acc, 1, n + 1 - k);
  Rat fact(1);
  for (int i = 2; i <= n + 1; ++i) fact *= i;  // (n+1)!
  TensorField ups = Scalar(Rat(1) / fact) * acc;
  AffineConnection hat = projective_change(D, ups);
  return {std::move(ups), std::move(hat)};
}

// Thomas projective parameters: the trace-free part of Gamma
inline TensorField thomas_parameters(const AffineConnection& D) {
  int n = D.n;
  TensorField gtr = gamma_trace(D);
  TensorField pi = D.gamma;
  Scalar c = Scalar(Rat(1, n + 1));
  pi.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int A = i[0], C = i[1], B = i[2];
    if (C == A) v -= c * gtr.at({B});
    if (C == B) v -= c * gtr.at({A});
  });
  return pi;
}

}  // namespace pwlab
