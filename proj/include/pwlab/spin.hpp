// Clifford algebra and spinor calculus for the split-signature extension.
//
// The spinor module is the exterior algebra Lambda(R^n) with basis e_S indexed
// by subsets S of {0..n-1}. Horizontal frame vectors act by sqrt2 * (wedge),
// vertical ones by -sqrt2 * (contraction); the frame metric is constant, so
// gamma matrices are constant and the spin connection is (1/4) Gt_abc g^b g^c
// with the frame Christoffels. chi = e_{} is the degree-zero basis spinor and
// etacheck = -1/2 e_top the dual spinor normalized against it. Dual spinors
// are realized on the same space, paired by <kappa, psi> = top part of
// kappa ^ psi, with the transposed gamma action.
//
// Chirality dictionary: even exterior degree is the plus chirality for spinors;
// for dual spinors the parity of (n - degree) decides, so etacheck is even-type
// precisely when n is even.

#pragma once

#include "pwlab/linalg.hpp"
#include "pwlab/pw.hpp"

namespace pwlab {

struct SpinorField {
  ChartPtr chart;
  bool dual = false;
  int cw = 0;
  std::vector<Scalar> c;  // 2^n components, index = subset bitmask

  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }
  friend SpinorField operator+(SpinorField l, const SpinorField& r) {
    if (l.dual != r.dual || l.c.size() != r.c.size()) throw Error("spinor shape mismatch");
    for (size_t i = 0; i < l.c.size(); ++i) l.c[i] += r.c[i];
    return l;
  }
  friend SpinorField operator-(SpinorField l, const SpinorField& r) {
    if (l.dual != r.dual || l.c.size() != r.c.size()) throw Error("spinor shape mismatch");
    for (size_t i = 0; i < l.c.size(); ++i) l.c[i] -= r.c[i];
    return l;
  }
  friend SpinorField operator*(const Scalar& s, SpinorField r) {
    for (auto& v : r.c) v = s * v;
    return r;
  }
  friend bool operator==(const SpinorField& l, const SpinorField& r) {
    return l.dual == r.dual && l.c == r.c;
  }
};

class CliffordModule {
 public:
  explicit CliffordModule(ChartPtr chart) : chart_(std::move(chart)), n_(chart_->n) {
    N_ = 1 << n_;
  }

  const ChartPtr& chart() const { return chart_; }
  int n() const { return n_; }
  int dimension() const { return N_; }

  SpinorField zero_spinor(bool dual = false) const {
    return SpinorField{chart_, dual, 0, std::vector<Scalar>(N_, Scalar())};
  }
  // chi = e_{} in Lambda^0
  SpinorField chi() const {
    SpinorField s = zero_spinor(false);
    s.c[0] = Scalar(1);
    return s;
  }
  // etacheck = -1/2 e_top, paired so that <etacheck, chi> = -1/2
  SpinorField etacheck() const {
    SpinorField s = zero_spinor(true);
    s.c[N_ - 1] = Scalar(Rat(-1, 2));
    return s;
  }

  // <kappa, psi> = coefficient of e_top in kappa ^ psi
  Scalar pair(const SpinorField& kappa, const SpinorField& psi) const {
    if (!kappa.dual || psi.dual) throw Error("pair: need (dual, primal)");
    Scalar out;
    for (int S = 0; S < N_; ++S) {
      const Scalar& ks = kappa.c[S];
      if (ks.is_zero()) continue;
      int T = (N_ - 1) & ~S;
      const Scalar& pt = psi.c[T];
      if (pt.is_zero()) continue;
      out += Scalar(wedge_concat_sign(S, T)) * ks * pt;
    }
    return out;
  }

  // gamma of the frame vector with label alpha (alpha < n horizontal, else vertical)
  SpinorField gamma_frame(int alpha, const SpinorField& psi) const {
    SpinorField out = zero_spinor(psi.dual);
    out.cw = psi.cw + 1;  // gammas carry conformal weight one
    Scalar r2 = Scalar::sqrt2();
    for (int S = 0; S < N_; ++S) {
      const Scalar& v = psi.c[S];
      if (v.is_zero()) continue;
      int deg = __builtin_popcount(static_cast<unsigned>(S));
      if (!psi.dual) {
        if (alpha < n_) {  // sqrt2 * wedge_A
          int A = alpha;
          if (S & (1 << A)) continue;
          int sgn = below_sign(S, A);
          out.c[S | (1 << A)] += Scalar(sgn) * r2 * v;
        } else {  // -sqrt2 * iota_A
          int A = alpha - n_;
          if (!(S & (1 << A))) continue;
          int sgn = below_sign(S & ~(1 << A), A);
          out.c[S & ~(1 << A)] -= Scalar(sgn) * r2 * v;
        }
      } else {
        // transpose action: <gamma^T kappa, psi> = <kappa, gamma psi>
        Scalar sgn_deg = Scalar(deg % 2 ? -1 : 1);
        if (alpha < n_) {  // sqrt2 (-1)^deg e_A ^ .
          int A = alpha;
          if (S & (1 << A)) continue;
          int sgn = below_sign(S, A);
          out.c[S | (1 << A)] += Scalar(sgn) * sgn_deg * r2 * v;
        } else {  // sqrt2 (-1)^deg iota_A
          int A = alpha - n_;
          if (!(S & (1 << A))) continue;
          int sgn = below_sign(S & ~(1 << A), A);
          out.c[S & ~(1 << A)] += Scalar(sgn) * sgn_deg * r2 * v;
        }
      }
    }
    return out;
  }

  // gamma of a coordinate vector field e_a expanded in the adapted frame
  SpinorField gamma_coord(const PWGeometry& P, int a, const SpinorField& psi) const {
    int n = n_;
    if (a >= n) return gamma_frame(n + (a - n), psi);
    // d/dx^A = h_A - Gamma_A^C_B p_C v^B
    SpinorField out = gamma_frame(a, psi);
    const Chart& ch = *chart_;
    for (int B = 0; B < n; ++B) {
      Scalar gp;
      for (int C = 0; C < n; ++C) gp += P.base().G(a, C, B) * Scalar::var(ch.pvar(C));
      if (gp.is_zero()) continue;
      SpinorField piece = gamma_frame(n + B, psi);
      out = out - gp * piece;
    }
    return out;
  }

  // gamma of an arbitrary contravariant vector field
  SpinorField gamma_vector(const PWGeometry& P, const TensorField& v,
                           const SpinorField& psi) const {
    SpinorField out = zero_spinor(psi.dual);
    out.cw = psi.cw + 1;
    for (int a = 0; a < 2 * n_; ++a) {
      const Scalar& va = v.at({a});
      if (va.is_zero()) continue;
      out = out + va * gamma_coord(P, a, psi);
    }
    return out;
  }

 private:
  // sign of moving e_A past the elements of S below A
  static int below_sign(int S, int A) {
    int cnt = __builtin_popcount(static_cast<unsigned>(S & ((1 << A) - 1)));
    return cnt % 2 ? -1 : 1;
  }
  // sign of e_S ^ e_T against e_{S u T} for disjoint S, T
  static int wedge_concat_sign(int S, int T) {
    int sign = 1;
    for (int A = 0; A < 16; ++A) {
      if (!(T & (1 << A))) continue;
      int above = __builtin_popcount(static_cast<unsigned>(S >> (A + 1)));
      if (above % 2) sign = -sign;
    }
    return sign;
  }

  ChartPtr chart_;
  int n_, N_;
};

// ---------------------------------------------------------------------------
// Spin connection. The frame gammas are constant, so in the adapted frame
// Dt_alpha psi = e_alpha(psi) + 1/4 Gt(alpha,beta,gamma) g^beta g^gamma psi,
// with indices raised by the constant frame metric (dual of h_A is v^A).

namespace detail {
inline SpinorField frame_direction_derivative(const PWGeometry& P, int alpha,
                                              const SpinorField& psi) {
  const Chart& ch = *psi.chart;
  int n = ch.n;
  SpinorField out{psi.chart, psi.dual, psi.cw, std::vector<Scalar>(psi.c.size(), Scalar())};
  for (size_t i = 0; i < psi.c.size(); ++i) {
    if (alpha < n) {
      Scalar v = psi.c[i].partial(ch.xvar(alpha));
      for (int B = 0; B < n; ++B) {
        Scalar gp;
        for (int C = 0; C < n; ++C) gp += P.base().G(alpha, C, B) * Scalar::var(ch.pvar(C));
        if (!gp.is_zero()) v += gp * psi.c[i].partial(ch.pvar(B));
      }
      out.c[i] = v;
    } else {
      out.c[i] = psi.c[i].partial(ch.pvar(alpha - n));
    }
  }
  return out;
}
}  // namespace detail

// frame-indexed covariant derivative, 2n entries
inline std::vector<SpinorField> spin_covd_frame(const PWGeometry& P, const CliffordModule& cm,
                                                const SpinorField& psi) {
  int n = P.n(), d = P.dim();
  const TensorField& om = P.closed().gamma_frame;  // g(nabla_a e_b, e_c)
  auto dual_label = [&](int beta) { return beta < n ? n + beta : beta - n; };
  std::vector<SpinorField> out;
  out.reserve(d);
  for (int alpha = 0; alpha < d; ++alpha) {
    SpinorField acc = detail::frame_direction_derivative(P, alpha, psi);
    for (int beta = 0; beta < d; ++beta)
      for (int gamma = 0; gamma < d; ++gamma) {
        const Scalar& w = om.at({alpha, beta, gamma});
        if (w.is_zero()) continue;
        if (!psi.dual) {
          // +1/4 w g^beta g^gamma psi
          SpinorField term = cm.gamma_frame(dual_label(beta), cm.gamma_frame(dual_label(gamma), psi));
          acc = acc + (Scalar(Rat(1, 4)) * w) * term;
        } else {
          // -1/4 w (g^beta g^gamma)^T kappa, transposed product reverses
          SpinorField term = cm.gamma_frame(dual_label(gamma), cm.gamma_frame(dual_label(beta), psi));
          acc = acc - (Scalar(Rat(1, 4)) * w) * term;
        }
      }
    acc.cw = psi.cw;
    out.push_back(std::move(acc));
  }
  return out;
}

// coordinate-indexed covariant derivative via the frame expansion of d/dx, d/dp
inline std::vector<SpinorField> spin_covd_coord(const PWGeometry& P, const CliffordModule& cm,
                                                const SpinorField& psi) {
  int n = P.n(), d = P.dim();
  const Chart& ch = *P.chart();
  std::vector<SpinorField> frame = spin_covd_frame(P, cm, psi);
  std::vector<SpinorField> out;
  out.reserve(d);
  for (int a = 0; a < d; ++a) {
    if (a >= n) {
      out.push_back(frame[n + (a - n)]);
      continue;
    }
    SpinorField acc = frame[a];
    for (int B = 0; B < n; ++B) {
      Scalar gp;
      for (int C = 0; C < n; ++C) gp += P.base().G(a, C, B) * Scalar::var(ch.pvar(C));
      if (!gp.is_zero()) acc = acc - gp * frame[n + B];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// Dirac operator g^c Dt_c psi, assembled in the frame
inline SpinorField dirac(const PWGeometry& P, const CliffordModule& cm, const SpinorField& psi) {
  int n = P.n();
  std::vector<SpinorField> dfr = spin_covd_frame(P, cm, psi);
  SpinorField out = cm.zero_spinor(psi.dual);
  for (int A = 0; A < n; ++A) {
    out = out + cm.gamma_frame(n + A, dfr[A]);  // dual of h_A is v^A
    out = out + cm.gamma_frame(A, dfr[n + A]);  // dual of v^A is h_A
  }
  out.cw = psi.cw - 1;
  return out;
}

// twistor operator Dt_a psi + (1/2n) gamma_a Dslash psi, frame-indexed
inline std::vector<SpinorField> twistor_residual(const PWGeometry& P, const CliffordModule& cm,
                                                 const SpinorField& psi) {
  int n = P.n(), d = P.dim();
  std::vector<SpinorField> out = spin_covd_frame(P, cm, psi);
  SpinorField ds = dirac(P, cm, psi);
  Scalar f = Scalar(Rat(1, 2 * n));
  for (int alpha = 0; alpha < d; ++alpha)
    out[alpha] = out[alpha] + f * cm.gamma_frame(alpha, ds);
  return out;
}

// Lie derivative along a conformal Killing field:
//   L_v psi = v^a Dt_a psi - 1/4 (Dt_[a v_b]) g^a g^b psi - (1/4n)(Dt_p v^p) psi
inline SpinorField lie_derivative_spinor(const PWGeometry& P, const CliffordModule& cm,
                                         const TensorField& v_up, const SpinorField& psi) {
  int d = P.dim(), n = P.n();
  TensorField v_dn = P.lower(v_up);
  TensorField Dv = P.covd(v_dn);
  // conformal Killing residual: trace-free symmetric part must vanish
  {
    TensorField sym = sym2(Dv, 0, 1);
    Scalar tr;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) tr += P.ginv().at({a, b}) * sym.at({a, b});
    TensorField tf = sym;
    tf.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
      val -= Scalar(Rat(1, 2 * n)) * tr * P.g().at({i[0], i[1]});
    });
    if (!tf.is_zero())
      throw Error("lie_derivative_spinor: the field is not conformal Killing");
  }
  // v^a Dt_a psi
  std::vector<SpinorField> dco = spin_covd_coord(P, cm, psi);
  SpinorField out = cm.zero_spinor(psi.dual);
  for (int a = 0; a < d; ++a) {
    const Scalar& va = v_up.at({a});
    if (!va.is_zero()) out = out + va * dco[a];
  }
  // - 1/4 (Dt_[a v_b]) g^a g^b psi, indices raised with ginv
  TensorField curl(P.chart(), {Space::MtDown, Space::MtDown});
  curl.for_each_mut([&](const std::vector<int>& i, Scalar& val) {
    val = Scalar(Rat(1, 2)) * (Dv.at({i[0], i[1]}) - Dv.at({i[1], i[0]}));
  });
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Scalar m;
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          m += curl.at({c, e}) * P.ginv().at({c, a}) * P.ginv().at({e, b});
      if (m.is_zero()) continue;
      SpinorField gg = psi.dual ? cm.gamma_coord(P, b, cm.gamma_coord(P, a, psi))
                                : cm.gamma_coord(P, a, cm.gamma_coord(P, b, psi));
      out = out - (Scalar(Rat(1, 4)) * m) * gg;
    }
  // - (1/4n) (div v) psi
  Scalar div;
  {
    TensorField Dvu = P.covd(v_up);
    for (int a = 0; a < d; ++a) div += Dvu.at({a, a});
  }
  out = out - (Scalar(Rat(1, 4 * n)) * div) * psi;
  out.cw = psi.cw;
  return out;
}

// ---------------------------------------------------------------------------
// The second distinguished spinor eta = (1/(2 sqrt2)) gamma^T(k) etacheck.

inline SpinorField eta_spinor(const PWGeometry& P, const CliffordModule& cm) {
  SpinorField e = cm.zero_spinor(true);
  SpinorField ec = cm.etacheck();
  SpinorField gk = cm.gamma_vector(P, P.k_up(), ec);
  Scalar f = Scalar(1) / (Scalar(2) * Scalar::sqrt2());
  e = f * gk;
  e.cw = 1;
  return e;
}

// components eta_A = <eta, gamma(h_A) chi>
inline std::vector<Scalar> eta_components(const PWGeometry& P, const CliffordModule& cm,
                                          const SpinorField& eta) {
  std::vector<Scalar> out;
  SpinorField chi = cm.chi();
  for (int A = 0; A < P.n(); ++A) out.push_back(cm.pair(eta, cm.gamma_frame(A, chi)));
  return out;
}

// purity: the rank of the 2n x 2^n matrix a -> gamma(e_a) psi must be n
inline int clifford_annihilator_rank(const PWGeometry& P, const CliffordModule& cm,
                                     const SpinorField& psi) {
  std::vector<std::vector<Scalar>> m;
  for (int a = 0; a < P.dim(); ++a) {
    SpinorField row = cm.gamma_coord(P, a, psi);
    m.push_back(row.c);
  }
  return matrix_rank(std::move(m));
}

}  // namespace pwlab
