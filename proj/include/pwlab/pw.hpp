// The Patterson-Walker metric on the total space: adapted frame, Levi-Civita
// data, the curvature dictionary against projective data, the distinguished
// homothety k, conformal covariance of the construction, and the normal-form
// recovery of the base connection.
//
// Coordinates on the total space are (x^1..x^n, p_1..p_n); index a < n is the
// x-block, a >= n the p-block. The metric is
//   g = 2 dx^A . dp_A - 2 Gamma_A^C_B p_C dx^A . dx^B
// and the adapted frame is h_A = d/dx^A + Gamma_A^C_B p_C d/dp_B (horizontal),
// v^A = d/dp_A (vertical). Frame labels: alpha < n is h_alpha, alpha >= n is
// v^(alpha-n). The frame metric is constant with g(h_A, v^B) = delta_A^B.

#pragma once

#include <mutex>
#include <variant>

#include "pwlab/solutions.hpp"

namespace pwlab {

struct MtCurvature {
  TensorField christoffel;   // Gt^c_ab, slots (down, up, down), coordinate frame
  TensorField riemann;       // Rt_ab^c_d
  TensorField riemann_low;   // Rt_abcd = g_ce Rt_ab^e_d
  TensorField ricci;         // Rict_ab = Rt_pa^p_b
  Scalar scalar_curv;
  TensorField schouten;      // Pt_ab
  TensorField weyl_low;      // Wt_abcd
  TensorField cotton;        // Yt_cab = 2 Dt_[a Pt_b]c
};

struct ClosedForms {
  TensorField gamma_low;     // Gt_abc closed form (coordinate indices, (bc) antisym)
  TensorField gamma_frame;   // frame components Gt(alpha,beta,gamma)
  TensorField riemann_low;   // closed form for Rt_abcd
  TensorField schouten;      // chi chi P
  TensorField cotton;        // chi chi chi Y
  TensorField weyl_low;      // closed form for Wt_abcd
  BaseCurvature base;        // R, Ric, P of the underlying connection
  TensorField base_weyl, base_cotton;
};

class PWGeometry {
 public:
  explicit PWGeometry(AffineConnection D) : D_(std::move(D)), chart_(D_.chart), n_(D_.n) {
    if (!is_special(D_))
      throw Error("Patterson-Walker build: connection is not special; apply special_part first");
    build_static();
    cache_ = std::make_shared<Cache>();
  }

  const AffineConnection& base() const { return D_; }
  const ChartPtr& chart() const { return chart_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }

  const TensorField& g() const { return g_; }
  const TensorField& ginv() const { return ginv_; }
  const TensorField& frame_up() const { return frame_up_; }      // e_alpha^a
  const TensorField& coframe_dn() const { return coframe_dn_; }  // (e^alpha)_a
  const TensorField& chi_up() const { return chi_up_; }    // chi^{aA}
  const TensorField& chi_dn() const { return chi_dn_; }    // chi_a^A
  const TensorField& eta_up() const { return eta_up_; }    // etacheck^a_A
  const TensorField& eta_dn() const { return eta_dn_; }    // etacheck_{aA}
  const TensorField& k_up() const { return k_up_; }
  const TensorField& k_dn() const { return k_dn_; }
  const TensorField& mu_dn() const { return mu_dn_; }      // mu_ab = Dt_[a k_b]

  int xslot(int A) const { return A; }
  int pslot(int A) const { return n_ + A; }

  const TensorField& christoffel() const {
    std::call_once(cache_->once_chr, [&] { cache_->chr = compute_christoffel(); });
    return *cache_->chr;
  }
  const MtCurvature& intrinsic() const {
    std::call_once(cache_->once_cur, [&] { cache_->cur = compute_intrinsic(); });
    return *cache_->cur;
  }
  const ClosedForms& closed() const {
    std::call_once(cache_->once_cls, [&] { cache_->cls = compute_closed(); });
    return *cache_->cls;
  }

  // covariant derivative of a total-space tensor, derivative slot first
  TensorField covd(const TensorField& T) const {
    for (auto s : T.slots())
      if (on_base(s)) throw Error("covd on Mt: tensor has base slots");
    const TensorField& chr = christoffel();
    int d = dim();
    TensorField out = coordinate_partial(T, false);
    std::vector<int> src(T.rank());
    out.for_each_mut([&](const std::vector<int>& idx, Scalar& val) {
      int a = idx[0];
      for (int k = 0; k < T.rank(); ++k) src[k] = idx[k + 1];
      for (int k = 0; k < T.rank(); ++k) {
        int held = src[k];
        if (is_up(T.slots()[k])) {
          for (int e = 0; e < d; ++e) {
            const Scalar& gch = chr.at({a, held, e});
            if (gch.is_zero()) continue;
            src[k] = e;
            val += gch * T.atv(src);
          }
        } else {
          for (int e = 0; e < d; ++e) {
            const Scalar& gch = chr.at({a, e, held});
            if (gch.is_zero()) continue;
            src[k] = e;
            val -= gch * T.atv(src);
          }
        }
        src[k] = held;
      }
    });
    return out;
  }

  TensorField lower(const TensorField& v) const {  // first slot MtUp -> MtDown
    return raise_lower(v, true);
  }
  TensorField raise(const TensorField& v) const {  // first slot MtDown -> MtUp
    return raise_lower(v, false);
  }

  // Lie derivative along k of a scalar-weighted density of conformal weight w
  Scalar lie_k_density(const Scalar& f, int w) const {
    Scalar out = Scalar(-w) * f;
    for (int A = 0; A < n_; ++A)
      out += Scalar(2) * Scalar::var(chart_->pvar(A)) * f.partial(chart_->pvar(A));
    return out;
  }

 private:
  struct Cache {
    std::once_flag once_chr, once_cur, once_cls;
    std::optional<TensorField> chr;
    std::optional<MtCurvature> cur;
    std::optional<ClosedForms> cls;
  };

  void build_static() {
    const Chart& ch = *chart_;
    int n = n_;
    g_ = TensorField(chart_, {Space::MtDown, Space::MtDown}, 0, 2);
    ginv_ = TensorField(chart_, {Space::MtUp, Space::MtUp}, 0, -2);
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B) {
        Scalar gp;
        for (int C = 0; C < n; ++C)
          gp += D_.G(A, C, B) * Scalar::var(ch.pvar(C));
        g_.at({xslot(A), xslot(B)}) = Scalar(-2) * gp;
        ginv_.at({pslot(A), pslot(B)}) = Scalar(2) * gp;
        if (A == B) {
          g_.at({xslot(A), pslot(B)}) = Scalar(1);
          g_.at({pslot(B), xslot(A)}) = Scalar(1);
          ginv_.at({xslot(A), pslot(B)}) = Scalar(1);
          ginv_.at({pslot(B), xslot(A)}) = Scalar(1);
        }
      }

    chi_up_ = TensorField(chart_, {Space::MtUp, Space::MUp}, 0, -1);
    chi_dn_ = TensorField(chart_, {Space::MtDown, Space::MUp}, 0, 1);
    eta_up_ = TensorField(chart_, {Space::MtUp, Space::MDown}, 0, -1);
    eta_dn_ = TensorField(chart_, {Space::MtDown, Space::MDown}, 0, 1);
    for (int A = 0; A < n; ++A) {
      chi_up_.at({pslot(A), A}) = Scalar(1);
      chi_dn_.at({xslot(A), A}) = Scalar(1);
      eta_up_.at({xslot(A), A}) = Scalar(1);
      eta_dn_.at({pslot(A), A}) = Scalar(1);
      for (int B = 0; B < n; ++B) {
        Scalar gp;
        for (int C = 0; C < n; ++C) gp += D_.G(A, C, B) * Scalar::var(ch.pvar(C));
        if (!gp.is_zero()) {
          eta_up_.at({pslot(B), A}) = gp;
          eta_dn_.at({xslot(B), A}) = -gp;
        }
      }
    }

    // frame: alpha < n -> h_alpha, alpha >= n -> v^(alpha-n); coframe is g-dual
    frame_up_ = TensorField(chart_, {Space::MtDown, Space::MtUp});
    coframe_dn_ = TensorField(chart_, {Space::MtDown, Space::MtDown});
    for (int A = 0; A < n; ++A)
      for (int a = 0; a < dim(); ++a) {
        frame_up_.at({A, a}) = eta_up_.at({a, A});
        frame_up_.at({n + A, a}) = chi_up_.at({a, A});
        coframe_dn_.at({A, a}) = chi_dn_.at({a, A});          // dual of h_A is dx^A
        coframe_dn_.at({n + A, a}) = eta_dn_.at({a, A});      // dual of v^A is etacheck_A
      }

    k_up_ = TensorField(chart_, {Space::MtUp}, 0, 0);
    k_dn_ = TensorField(chart_, {Space::MtDown}, 0, 2);
    for (int A = 0; A < n; ++A) {
      k_up_.at({pslot(A)}) = Scalar(2) * Scalar::var(ch.pvar(A));
      k_dn_.at({xslot(A)}) = Scalar(2) * Scalar::var(ch.pvar(A));
    }
    mu_dn_ = TensorField(chart_, {Space::MtDown, Space::MtDown}, 0, 2);
    TensorField dk = coordinate_partial(k_dn_, false);
    mu_dn_.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      v = Scalar(Rat(1, 2)) * (dk.at({i[0], i[1]}) - dk.at({i[1], i[0]}));
    });
  }

  TensorField raise_lower(const TensorField& v, bool lower_first) const {
    if (v.rank() < 1) throw Error("raise/lower: need at least one slot");
    const TensorField& m = lower_first ? g_ : ginv_;
    std::vector<Space> slots = v.slots();
    slots[0] = lower_first ? Space::MtDown : Space::MtUp;
    TensorField out(chart_, slots, v.pw(), v.cw() + (lower_first ? 2 : -2));
    std::vector<int> src(v.rank());
    out.for_each_mut([&](const std::vector<int>& idx, Scalar& val) {
      for (size_t k = 0; k < src.size(); ++k) src[k] = idx[k];
      for (int e = 0; e < dim(); ++e) {
        const Scalar& me = m.at({idx[0], e});
        if (me.is_zero()) continue;
        src[0] = e;
        val += me * v.atv(src);
      }
    });
    return out;
  }

  TensorField compute_christoffel() const {
    int d = dim();
    TensorField dg = coordinate_partial(g_, false);  // dg(a, b, c) = d_a g_bc
    TensorField chr(chart_, {Space::MtDown, Space::MtUp, Space::MtDown});
    chr.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], c = i[1], b = i[2];
      for (int e = 0; e < d; ++e) {
        const Scalar& gie = ginv_.at({c, e});
        if (gie.is_zero()) continue;
        v += Scalar(Rat(1, 2)) * gie *
             (dg.at({a, b, e}) + dg.at({b, a, e}) - dg.at({e, a, b}));
      }
    });
    return chr;
  }

  MtCurvature compute_intrinsic() const {
    int d = dim(), m = 2 * n_;
    MtCurvature out;
    out.christoffel = christoffel();
    const TensorField& chr = out.christoffel;
    TensorField R(chart_, {Space::MtDown, Space::MtDown, Space::MtUp, Space::MtDown});
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            Scalar v = chr.at({b, c, e}).partial(a) - chr.at({a, c, e}).partial(b);
            for (int f = 0; f < d; ++f)
              v += chr.at({a, c, f}) * chr.at({b, f, e}) -
                   chr.at({b, c, f}) * chr.at({a, f, e});
            R.at({a, b, c, e}) = v;
            R.at({b, a, c, e}) = -v;
          }
    out.ricci = contract(permute(R, {2, 0, 1, 3}), 0, 1);
    out.scalar_curv = contract(contract(outer(ginv_, out.ricci), 1, 2), 0, 1).at({});
    // Pt = 1/(m-2) (Ric - Sc/(2(m-1)) g)
    TensorField trace_part = (out.scalar_curv * Scalar(Rat(1, 2 * (m - 1)))) * g_;
    trace_part.set_cw(out.ricci.cw());
    out.schouten = Scalar(Rat(1, m - 2)) * (out.ricci - trace_part);
    // lowered Riemann and Weyl
    TensorField Rlow(chart_, {Space::MtDown, Space::MtDown, Space::MtDown, Space::MtDown});
    Rlow.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], b = i[1], c = i[2], dd = i[3];
      for (int e = 0; e < d; ++e) {
        const Scalar& gce = g_.at({c, e});
        if (gce.is_zero()) continue;
        v += gce * R.at({a, b, e, dd});
      }
    });
    TensorField Pud(chart_, {Space::MtDown, Space::MtUp});  // Pt_b^c
    Pud.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int b = i[0], c = i[1];
      for (int e = 0; e < d; ++e) v += out.schouten.at({b, e}) * ginv_.at({e, c});
    });
    TensorField Wud = R;
    Wud.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], b = i[1], c = i[2], dd = i[3];
      // - 2 delta^c_[a Pt_b]d + 2 g_d[a Pt_b]^c
      if (c == a) v -= out.schouten.at({b, dd});
      if (c == b) v += out.schouten.at({a, dd});
      v += g_.at({dd, a}) * Pud.at({b, c}) - g_.at({dd, b}) * Pud.at({a, c});
    });
    TensorField Wlow(chart_, {Space::MtDown, Space::MtDown, Space::MtDown, Space::MtDown});
    Wlow.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], b = i[1], c = i[2], dd = i[3];
      for (int e = 0; e < d; ++e) {
        const Scalar& gce = g_.at({c, e});
        if (gce.is_zero()) continue;
        v += gce * Wud.at({a, b, e, dd});
      }
    });
    out.riemann = std::move(R);
    out.riemann_low = std::move(Rlow);
    out.weyl_low = std::move(Wlow);
    // Cotton: Yt_cab = Dt_a Pt_bc - Dt_b Pt_ac
    TensorField DP = covd(out.schouten);
    TensorField Y(chart_, {Space::MtDown, Space::MtDown, Space::MtDown});
    Y.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int c = i[0], a = i[1], b = i[2];
      v = DP.at({a, b, c}) - DP.at({b, a, c});
    });
    out.cotton = std::move(Y);
    return out;
  }

  ClosedForms compute_closed() const {
    const Chart& ch = *chart_;
    int n = n_;
    ClosedForms out;
    out.base = curvature(D_);
    auto wc = projective_weyl_cotton(D_);
    out.base_weyl = wc.weyl;
    out.base_cotton = wc.cotton;
    const TensorField& R = out.base.riemann;
    const TensorField& P = out.base.schouten;
    const TensorField& W = out.base_weyl;
    const TensorField& Y = out.base_cotton;
    TensorField DR = ::pwlab::covd(D_, R);  // D_A R_CD^E_B -> slots (A, C, D, E, B)
    TensorField DW = ::pwlab::covd(D_, W);

    auto pvar = [&](int A) { return Scalar::var(ch.pvar(A)); };

    // closed form: 2 chi_a^A etacheck_[bB chi_c]^C Gamma_A^B_C + chi chi chi R_BC^D_A p_D,
    // with the lowered index in the middle slot. Stored here in the ordering
    // Gt_abc = g(nabla_a e_b, e_c), i.e. with the last two slots exchanged.
    TensorField gl(chart_, {Space::MtDown, Space::MtDown, Space::MtDown});
    gl.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], c = i[1], b = i[2];
      for (int A = 0; A < n; ++A) {
        const Scalar& xa = chi_dn_.at({a, A});
        if (xa.is_zero()) continue;
        for (int B = 0; B < n; ++B)
          for (int C = 0; C < n; ++C) {
            const Scalar& gam = D_.G(A, B, C);
            if (!gam.is_zero()) {
              v += xa * gam *
                   (eta_dn_.at({b, B}) * chi_dn_.at({c, C}) -
                    eta_dn_.at({c, B}) * chi_dn_.at({b, C}));
            }
            for (int E = 0; E < n; ++E) {
              const Scalar& r = R.at({B, C, E, A});
              if (r.is_zero()) continue;
              v += xa * chi_dn_.at({b, B}) * chi_dn_.at({c, C}) * r * pvar(E);
            }
          }
      }
    });
    out.gamma_low = std::move(gl);
    // frame components
    out.gamma_frame = frame_components3(out.gamma_low);

    // Rt_abcd = 2 (chi_a^A chi_b^B etacheck_[cC chi_d]^D + chi_c^A chi_d^B etacheck_[aC chi_b]^D) R_AB^C_D
    //           + 2 chi_[a^A chi_b]^B chi_c^C chi_d^D (D_A R_CD^E_B) p_E
    TensorField rl(chart_, {Space::MtDown, Space::MtDown, Space::MtDown, Space::MtDown});
    rl.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], b = i[1], c = i[2], dd = i[3];
      for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
          for (int C = 0; C < n; ++C)
            for (int E = 0; E < n; ++E) {
              const Scalar& r = R.at({A, B, C, E});
              if (!r.is_zero()) {
                Scalar pr1 = chi_dn_.at({a, A}) * chi_dn_.at({b, B}) *
                             (eta_dn_.at({c, C}) * chi_dn_.at({dd, E}) -
                              eta_dn_.at({dd, C}) * chi_dn_.at({c, E}));
                Scalar pr2 = chi_dn_.at({c, A}) * chi_dn_.at({dd, B}) *
                             (eta_dn_.at({a, C}) * chi_dn_.at({b, E}) -
                              eta_dn_.at({b, C}) * chi_dn_.at({a, E}));
                v += (pr1 + pr2) * r;
              }
              for (int F = 0; F < n; ++F) {
                const Scalar& dr = DR.at({A, C, E, F, B});  // D_A R_CE^F_B
                if (dr.is_zero()) continue;
                Scalar pr = (chi_dn_.at({a, A}) * chi_dn_.at({b, B}) -
                             chi_dn_.at({b, A}) * chi_dn_.at({a, B})) *
                            chi_dn_.at({c, C}) * chi_dn_.at({dd, E});
                v += pr * dr * pvar(F);
              }
            }
    });
    out.riemann_low = std::move(rl);

    // Pt = chi chi P pullback; Yt = chi chi chi Y pullback
    TensorField pt(chart_, {Space::MtDown, Space::MtDown});
    pt.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], b = i[1];
      if (a < n && b < n) v = P.at({a, b});
    });
    out.schouten = std::move(pt);
    TensorField yt(chart_, {Space::MtDown, Space::MtDown, Space::MtDown});
    yt.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int c = i[0], a = i[1], b = i[2];
      if (c < n && a < n && b < n) v = Y.at({c, a, b});
    });
    out.cotton = std::move(yt);

    // first block: same projector pattern as the Riemann dictionary, with W in
    // place of R; second block adds the Cotton contribution on the x-slots
    TensorField wl(chart_, {Space::MtDown, Space::MtDown, Space::MtDown, Space::MtDown});
    wl.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      int a = i[0], b = i[1], c = i[2], dd = i[3];
      for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
          for (int C = 0; C < n; ++C) {
            for (int E = 0; E < n; ++E) {
              const Scalar& w = W.at({A, B, C, E});
              if (!w.is_zero()) {
                Scalar pr1 = chi_dn_.at({a, A}) * chi_dn_.at({b, B}) *
                             (eta_dn_.at({c, C}) * chi_dn_.at({dd, E}) -
                              eta_dn_.at({dd, C}) * chi_dn_.at({c, E}));
                Scalar pr2 = chi_dn_.at({c, A}) * chi_dn_.at({dd, B}) *
                             (eta_dn_.at({a, C}) * chi_dn_.at({b, E}) -
                              eta_dn_.at({b, C}) * chi_dn_.at({a, E}));
                v += (pr1 + pr2) * w;
              }
            }
          }
      if (a < n && b < n && c < n && dd < n) {
        // 2 * antisym[ab] antisym[cd] of (D_A W_CD^E_B p_E + p_C Y_DAB), halved pairs
        auto piece = [&](int A, int B, int C, int Dd) {
          Scalar s;
          for (int E = 0; E < n; ++E) s += DW.at({A, C, Dd, E, B}) * pvar(E);
          s += pvar(C) * Y.at({Dd, A, B});
          return s;
        };
        v += Scalar(Rat(1, 2)) * (piece(a, b, c, dd) - piece(b, a, c, dd) -
                                  piece(a, b, dd, c) + piece(b, a, dd, c));
      }
    });
    out.weyl_low = std::move(wl);
    return out;
  }

  // contract a rank-3 lowered coordinate tensor into frame labels
  TensorField frame_components3(const TensorField& t) const {
    int d = dim();
    TensorField out(chart_, {Space::MtDown, Space::MtDown, Space::MtDown});
    out.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
      for (int a = 0; a < d; ++a) {
        const Scalar& fa = frame_up_.at({i[0], a});
        if (fa.is_zero()) continue;
        for (int b = 0; b < d; ++b) {
          const Scalar& fb = frame_up_.at({i[1], b});
          if (fb.is_zero()) continue;
          for (int c = 0; c < d; ++c) {
            const Scalar& fc = frame_up_.at({i[2], c});
            if (fc.is_zero()) continue;
            v += fa * fb * fc * t.at({a, b, c});
          }
        }
      }
    });
    return out;
  }

  AffineConnection D_;
  ChartPtr chart_;
  int n_;
  TensorField g_, ginv_;
  TensorField chi_up_, chi_dn_, eta_up_, eta_dn_;
  TensorField frame_up_, coframe_dn_;
  TensorField k_up_, k_dn_, mu_dn_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Frame-level oracles

// commutator of two frame fields as a coordinate vector field
inline TensorField frame_commutator(const PWGeometry& P, int alpha, int beta) {
  const TensorField& F = P.frame_up();
  int d = P.dim();
  TensorField out(P.chart(), {Space::MtUp});
  for (int c = 0; c < d; ++c) {
    Scalar v;
    for (int a = 0; a < d; ++a) {
      const Scalar &ea = F.at({alpha, a}), &eb = F.at({beta, a});
      if (!ea.is_zero()) v += ea * F.at({beta, c}).partial(a);
      if (!eb.is_zero()) v -= eb * F.at({alpha, c}).partial(a);
    }
    out.at({c}) = v;
  }
  return out;
}

// Koszul formula in the adapted frame (frame metric constant):
//   2 Gt(a,b,c) = g([e_a,e_b],e_c) - g([e_b,e_c],e_a) + g([e_c,e_a],e_b)
inline TensorField frame_christoffels_koszul(const PWGeometry& P) {
  int d = P.dim();
  auto pair_g = [&](const TensorField& v, int beta) {
    // g(v, e_beta)
    Scalar out;
    for (int a = 0; a < d; ++a) {
      if (v.at({a}).is_zero()) continue;
      for (int b = 0; b < d; ++b) {
        const Scalar& gf = P.g().at({a, b});
        if (gf.is_zero()) continue;
        out += v.at({a}) * gf * P.frame_up().at({beta, b});
      }
    }
    return out;
  };
  TensorField out(P.chart(), {Space::MtDown, Space::MtDown, Space::MtDown});
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        Scalar v = pair_g(frame_commutator(P, a, b), c) -
                   pair_g(frame_commutator(P, b, c), a) +
                   pair_g(frame_commutator(P, c, a), b);
        out.at({a, b, c}) = Scalar(Rat(1, 2)) * v;
      }
  return out;
}

// frame components of g(nabla_{e_a} e_b, e_c) from the coordinate Christoffels
inline TensorField frame_christoffels_intrinsic(const PWGeometry& P) {
  const TensorField& chr = P.christoffel();
  const TensorField& F = P.frame_up();
  int d = P.dim();
  TensorField out(P.chart(), {Space::MtDown, Space::MtDown, Space::MtDown});
  for (int alpha = 0; alpha < d; ++alpha)
    for (int beta = 0; beta < d; ++beta) {
      // nabla_{e_alpha} e_beta, coordinate components
      TensorField nab(P.chart(), {Space::MtUp});
      for (int c = 0; c < d; ++c) {
        Scalar v;
        for (int a = 0; a < d; ++a) {
          const Scalar& ea = F.at({alpha, a});
          if (ea.is_zero()) continue;
          v += ea * F.at({beta, c}).partial(a);
          for (int b = 0; b < d; ++b) {
            const Scalar& eb = F.at({beta, b});
            if (eb.is_zero()) continue;
            v += ea * eb * chr.at({a, c, b});
          }
        }
        nab.at({c}) = v;
      }
      for (int gamma = 0; gamma < d; ++gamma) {
        Scalar v;
        for (int a = 0; a < d; ++a) {
          if (nab.at({a}).is_zero()) continue;
          for (int b = 0; b < d; ++b) {
            const Scalar& gf = P.g().at({a, b});
            if (gf.is_zero()) continue;
            v += nab.at({a}) * gf * F.at({gamma, b});
          }
        }
        out.at({alpha, beta, gamma}) = v;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// k properties

struct KReport {
  TensorField ck_residual;    // Dt_a k_b - mu_ab - g_ab
  TensorField lie_residual;   // L_k g - 2 g
  Scalar norm;                // g(k, k)
  bool mu_eigen_ok;           // mu acts as +1 on H and -1 on V
};

inline KReport k_properties(const PWGeometry& P) {
  KReport rep{TensorField(P.chart(), {Space::MtDown, Space::MtDown}),
              TensorField(P.chart(), {Space::MtDown, Space::MtDown}), Scalar(), true};
  TensorField Dk = P.covd(P.k_dn());
  rep.ck_residual = Dk - P.mu_dn() - P.g();
  // L_k g_ab = k^c d_c g_ab + g_cb d_a k^c + g_ac d_b k^c
  int d = P.dim();
  TensorField lie(P.chart(), {Space::MtDown, Space::MtDown}, 0, 2);
  lie.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    int a = i[0], b = i[1];
    for (int c = 0; c < d; ++c) {
      const Scalar& kc = P.k_up().at({c});
      if (!kc.is_zero()) v += kc * P.g().at({a, b}).partial(c);
      v += P.g().at({c, b}) * P.k_up().at({c}).partial(a) +
           P.g().at({a, c}) * P.k_up().at({c}).partial(b);
    }
    v -= Scalar(2) * P.g().at({a, b});
  });
  rep.lie_residual = std::move(lie);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) rep.norm += P.g().at({a, b}) * P.k_up().at({a}) * P.k_up().at({b});
  // mu^a_b: +1 on horizontal frame vectors, -1 on vertical
  TensorField muud(P.chart(), {Space::MtUp, Space::MtDown});
  muud.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    for (int c = 0; c < d; ++c) v += P.ginv().at({i[0], c}) * P.mu_dn().at({c, i[1]});
  });
  for (int alpha = 0; alpha < 2 * P.n(); ++alpha) {
    int sign = alpha < P.n() ? 1 : -1;
    for (int a = 0; a < d; ++a) {
      Scalar v;
      for (int b = 0; b < d; ++b) v += muud.at({a, b}) * P.frame_up().at({alpha, b});
      if (v != Scalar(sign) * P.frame_up().at({alpha, a})) rep.mu_eigen_ok = false;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// conformal covariance of the construction

struct CovarianceReport {
  struct PerWeight {
    int w;
    bool identity_ok;   // ghat == s^w (g + 2(w-2) p Ups dx.dx), exactly
    bool equals_s2g;    // ghat == s^2 g
  };
  std::vector<PerWeight> weights;
  bool passed(int expect_equal_at = 2) const {
    for (const auto& p : weights) {
      if (!p.identity_ok) return false;
      if (p.equals_s2g != (p.w == expect_equal_at)) return false;
    }
    return true;
  }
};

// sufficient syntactic certificate: positive constant plus positive multiples
// of even-exponent monomials is positive everywhere
inline bool certify_positive(const Scalar& s) {
  if (!s.is_polynomial()) return false;
  bool has_const = false;
  for (const auto& t : s.num().terms()) {
    if (!t.c.is_rational() || t.c.a <= 0) return false;
    if (t.m.is_const()) {
      has_const = true;
      continue;
    }
    for (int v = 0; v < kMaxVars; ++v)
      if (t.m.e[v] % 2) return false;
  }
  return has_const;
}

inline CovarianceReport conformal_covariance_check(const AffineConnection& D, const Scalar& s,
                                                   const std::vector<int>& weights = {0, 1, 2, 3}) {
  if (s.is_zero() || !certify_positive(s))
    throw Error("conformal_covariance_check: scale must be a certified-positive polynomial");
  const Chart& ch = *D.chart;
  int n = D.n;
  PWGeometry P(D);
  TensorField ups(D.chart, {Space::MDown});
  for (int A = 0; A < n; ++A) ups.at({A}) = s.partial(ch.xvar(A)) / s;
  AffineConnection Dh = projective_change(D, ups);
  CovarianceReport rep;
  for (int w : weights) {
    Scalar sw = s.pow(w);
    // ghat in (x, p) coordinates after substituting phat = s^w p
    TensorField ghat(D.chart, {Space::MtDown, Space::MtDown});
    for (int A = 0; A < n; ++A) {
      ghat.at({A, n + A}) = sw;
      ghat.at({n + A, A}) = sw;
      for (int B = 0; B < n; ++B) {
        Scalar v = Scalar(w) * sw * ups.at({B}) * Scalar::var(ch.pvar(A)) +
                   Scalar(w) * sw * ups.at({A}) * Scalar::var(ch.pvar(B));
        for (int C = 0; C < n; ++C)
          v -= Scalar(2) * Dh.G(A, C, B) * sw * Scalar::var(ch.pvar(C));
        ghat.at({A, B}) = v;
      }
    }
    // expected: s^w (g + 2 (w-2) p_B Ups_A dx^B . dx^A)
    TensorField expected = sw * P.g();
    expected.set_cw(0);
    ghat.set_cw(0);
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B)
        expected.at({A, B}) += Scalar(w - 2) * sw *
                               (Scalar::var(ch.pvar(A)) * ups.at({B}) +
                                Scalar::var(ch.pvar(B)) * ups.at({A}));
    bool identity_ok = (ghat == expected);
    TensorField s2g = s.pow(2) * P.g();
    s2g.set_cw(0);
    bool eq = (ghat == s2g);
    rep.weights.push_back({w, identity_ok, eq});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Walker normal form and recovery of the base connection

struct WalkerNormalForm {
  ChartPtr chart;
  TensorField theta;  // Theta_AB(x, p), symmetric
};

inline WalkerNormalForm make_walker_form(ChartPtr chart, TensorField theta) {
  if (theta.slots() != std::vector<Space>{Space::MDown, Space::MDown})
    throw Error("walker form: Theta must have two lower base slots");
  if (!symmetrize(theta, {0, 1}, true).is_zero())
    throw Error("walker form: Theta must be symmetric");
  return {std::move(chart), std::move(theta)};
}

struct WalkerRejection {
  std::string condition;  // "polynomial" | "linearity" | "homogeneity" | "trace"
  std::string message;
};

inline std::variant<AffineConnection, WalkerRejection> recover_connection(
    const WalkerNormalForm& N) {
  const Chart& ch = *N.chart;
  int n = ch.n;
  for (size_t i = 0; i < N.theta.size(); ++i)
    if (N.theta.flat(i).den().degree_in_range(n, 2 * n) != 0)
      return WalkerRejection{"polynomial", "Theta is not polynomial in the fiber variables"};
  // linearity: second fiber derivatives vanish
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int Cc = 0; Cc < n; ++Cc)
        for (int Dd = 0; Dd < n; ++Dd)
          if (!N.theta.at({A, B}).partial(ch.pvar(Cc)).partial(ch.pvar(Dd)).is_zero())
            return WalkerRejection{"linearity",
                                   "Theta is not linear in the fiber variables"};
  // homogeneity of degree one: p dTheta/dp = Theta
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B) {
      Scalar euler;
      for (int Cc = 0; Cc < n; ++Cc)
        euler += Scalar::var(ch.pvar(Cc)) * N.theta.at({A, B}).partial(ch.pvar(Cc));
      if (euler != N.theta.at({A, B}))
        return WalkerRejection{"homogeneity",
                               "Theta is not homogeneous of degree one in the fiber variables"};
    }
  // trace: sum_B dTheta_BA/dp_B = 0
  for (int A = 0; A < n; ++A) {
    Scalar tr;
    for (int B = 0; B < n; ++B) tr += N.theta.at({B, A}).partial(ch.pvar(B));
    if (!tr.is_zero())
      return WalkerRejection{"trace", "fiber divergence of Theta does not vanish"};
  }
  TensorField gamma(N.chart, {Space::MDown, Space::MUp, Space::MDown});
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int Cc = 0; Cc < n; ++Cc)
        gamma.at({A, Cc, B}) = N.theta.at({A, B}).partial(ch.pvar(Cc));
  return make_connection(N.chart, std::move(gamma));
}

inline WalkerNormalForm walker_form_of(const PWGeometry& P) {
  TensorField theta(P.chart(), {Space::MDown, Space::MDown});
  const Chart& ch = *P.chart();
  theta.for_each_mut([&](const std::vector<int>& i, Scalar& v) {
    for (int C = 0; C < ch.n; ++C)
      v += P.base().G(i[0], C, i[1]) * Scalar::var(ch.pvar(C));
  });
  return {P.chart(), std::move(theta)};
}

// the Patterson-Walker metric of the Thomas parameters in the given chart;
// identical to building from the special representative
inline PWGeometry thomas_pw(const AffineConnection& D) {
  return PWGeometry(make_connection(D.chart, thomas_parameters(D)));
}

// ---------------------------------------------------------------------------
// fiber rescaling p -> s^w p: pull hatted objects back to (x, p)

inline Scalar substitute_fiber_scaling(const Scalar& f, const Scalar& s, int w,
                                       const Chart& ch) {
  std::vector<std::optional<Scalar>> repl(2 * ch.n);
  Scalar sw = s.pow(w);
  for (int A = 0; A < ch.n; ++A) repl[ch.pvar(A)] = sw * Scalar::var(ch.pvar(A));
  return f.subst(repl);
}

// vector field given in hatted coordinates (x, phat) -> components in (x, p)
inline TensorField pullback_vector_fiber_scaling(const TensorField& vhat, const Scalar& s, int w,
                                                 const Chart& ch) {
  int n = ch.n;
  Scalar sinvw = Scalar(1) / s.pow(w);
  TensorField out(vhat.chart(), vhat.slots(), vhat.pw(), vhat.cw());
  std::vector<Scalar> ups(n);
  for (int A = 0; A < n; ++A) ups[A] = s.partial(ch.xvar(A)) / s;
  for (int a = 0; a < 2 * n; ++a) {
    Scalar vh = substitute_fiber_scaling(vhat.at({a}), s, w, ch);
    if (a < n) {
      out.at({a}) = vh;
    } else {
      out.at({a}) = sinvw * vh;
    }
  }
  for (int B = 0; B < n; ++B) {
    Scalar corr;
    for (int A = 0; A < n; ++A)
      corr += ups[A] * substitute_fiber_scaling(vhat.at({A}), s, w, ch);
    out.at({n + B}) -= Scalar(w) * corr * Scalar::var(ch.pvar(B));
  }
  return out;
}

}  // namespace pwlab
