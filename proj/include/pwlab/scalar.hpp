// Exact scalar arithmetic: multivariate rational functions over Q(sqrt2).
//
// Every quantity in the library is built from Scalar, a reduced fraction of
// sparse multivariate polynomials with coefficients a + b*sqrt2, a,b in Q.
// All identities downstream are therefore decided exactly (residual == 0),
// never numerically.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pwlab {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Coefficient field Q(sqrt2): value = a + b*sqrt2.

struct Coeff {
  Rat a, b;

  Coeff() : a(0), b(0) {}
  Coeff(int v) : a(v), b(0) {}  // NOLINT: implicit by design
  Coeff(const Rat& v) : a(v), b(0) { a.canonicalize(); }
  Coeff(Rat va, Rat vb) : a(std::move(va)), b(std::move(vb)) {
    a.canonicalize();
    b.canonicalize();
  }

  static Coeff sqrt2() { return Coeff(Rat(0), Rat(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_one() const { return a == 1 && b == 0; }
  bool is_rational() const { return b == 0; }

  Coeff operator-() const { return Coeff(-a, -b); }
  Coeff& operator+=(const Coeff& o) { a += o.a; b += o.b; return *this; }
  Coeff& operator-=(const Coeff& o) { a -= o.a; b -= o.b; return *this; }

  friend Coeff operator+(Coeff l, const Coeff& r) { l += r; return l; }
  friend Coeff operator-(Coeff l, const Coeff& r) { l -= r; return l; }
  friend Coeff operator*(const Coeff& l, const Coeff& r) {
    return Coeff(l.a * r.a + 2 * l.b * r.b, l.a * r.b + l.b * r.a);
  }
  Coeff inv() const {
    Rat n = a * a - 2 * b * b;  // zero only for a == b == 0
    if (n == 0) throw Error("Coeff::inv: division by zero");
    return Coeff(a / n, -b / n);
  }
  friend Coeff operator/(const Coeff& l, const Coeff& r) { return l * r.inv(); }
  friend bool operator==(const Coeff& l, const Coeff& r) { return l.a == r.a && l.b == r.b; }
  friend bool operator!=(const Coeff& l, const Coeff& r) { return !(l == r); }

  std::string str() const {
    if (b == 0) return rat_str(a);
    std::string s2 = (b == 1) ? "sqrt2" : (b == -1 ? "-sqrt2" : rat_str(b) + "*sqrt2");
    if (a == 0) return s2;
    if (b > 0) return "(" + rat_str(a) + "+" + (b == 1 ? std::string("sqrt2") : rat_str(b) + "*sqrt2") + ")";
    Rat nb = -b;
    return "(" + rat_str(a) + "-" + (nb == 1 ? std::string("sqrt2") : rat_str(nb) + "*sqrt2") + ")";
  }
};

// ---------------------------------------------------------------------------
// Monomials: exponent vectors over at most kMaxVars variables, graded lex.

constexpr int kMaxVars = 8;

struct Mono {
  std::array<uint8_t, kMaxVars> e{};

  int deg() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_const() const {
    for (auto x : e) if (x) return false;
    return true;
  }
  friend bool operator==(const Mono& l, const Mono& r) { return l.e == r.e; }
};

// true when l precedes r in the canonical order (graded lex, descending)
inline bool mono_before(const Mono& l, const Mono& r) {
  int dl = l.deg(), dr = r.deg();
  if (dl != dr) return dl > dr;
  for (int i = 0; i < kMaxVars; ++i)
    if (l.e[i] != r.e[i]) return l.e[i] > r.e[i];
  return false;
}

struct MonoBefore {
  bool operator()(const Mono& l, const Mono& r) const { return mono_before(l, r); }
};

inline Mono mono_mul(const Mono& l, const Mono& r) {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = l.e[i] + r.e[i];
    if (s > 255) throw Error("monomial exponent overflow");
    m.e[i] = static_cast<uint8_t>(s);
  }
  return m;
}

// l / r; requires divisibility
inline Mono mono_div(const Mono& l, const Mono& r) {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i) {
    if (l.e[i] < r.e[i]) throw Error("monomial division underflow");
    m.e[i] = static_cast<uint8_t>(l.e[i] - r.e[i]);
  }
  return m;
}

inline bool mono_divides(const Mono& r, const Mono& l) {
  for (int i = 0; i < kMaxVars; ++i)
    if (l.e[i] < r.e[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sparse polynomial, terms kept sorted in the canonical monomial order.

class Poly {
 public:
  struct Term {
    Mono m;
    Coeff c;
  };

  Poly() = default;
  Poly(const Coeff& c) {  // NOLINT: implicit by design
    if (!c.is_zero()) t_.push_back({Mono{}, c});
  }
  Poly(int v) : Poly(Coeff(v)) {}  // NOLINT

  static Poly var(int idx, int exp = 1) {
    if (idx < 0 || idx >= kMaxVars) throw Error("variable index out of range");
    Poly p;
    Mono m;
    m.e[idx] = static_cast<uint8_t>(exp);
    p.t_.push_back({m, Coeff(1)});
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_const() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_const()); }
  bool is_one() const { return t_.size() == 1 && t_[0].m.is_const() && t_[0].c.is_one(); }
  const Coeff& lead_coeff() const {
    if (t_.empty()) throw Error("lead_coeff of zero polynomial");
    return t_[0].c;
  }
  const Mono& lead_mono() const {
    if (t_.empty()) throw Error("lead_mono of zero polynomial");
    return t_[0].m;
  }
  Coeff const_coeff() const {
    if (t_.empty()) return Coeff();
    const Term& last = t_.back();
    return last.m.is_const() ? last.c : Coeff();
  }

  int degree_in(int v) const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, static_cast<int>(t.m.e[v]));
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.deg());
    return d;
  }
  bool depends_on(int v) const { return degree_in(v) > 0; }
  int max_var() const {  // highest variable index occurring, -1 if constant
    int mv = -1;
    for (const auto& t : t_)
      for (int i = kMaxVars - 1; i > mv; --i)
        if (t.m.e[i]) { mv = i; break; }
    return mv;
  }

  friend Poly operator-(const Poly& p) {
    Poly q = p;
    for (auto& t : q.t_) t.c = -t.c;
    return q;
  }

  friend Poly operator+(const Poly& l, const Poly& r) {
    Poly out;
    out.t_.reserve(l.t_.size() + r.t_.size());
    size_t i = 0, j = 0;
    while (i < l.t_.size() && j < r.t_.size()) {
      if (l.t_[i].m == r.t_[j].m) {
        Coeff c = l.t_[i].c + r.t_[j].c;
        if (!c.is_zero()) out.t_.push_back({l.t_[i].m, c});
        ++i, ++j;
      } else if (mono_before(l.t_[i].m, r.t_[j].m)) {
        out.t_.push_back(l.t_[i++]);
      } else {
        out.t_.push_back(r.t_[j++]);
      }
    }
    for (; i < l.t_.size(); ++i) out.t_.push_back(l.t_[i]);
    for (; j < r.t_.size(); ++j) out.t_.push_back(r.t_[j]);
    return out;
  }
  friend Poly operator-(const Poly& l, const Poly& r) { return l + (-r); }

  friend Poly operator*(const Poly& l, const Poly& r) {
    if (l.is_zero() || r.is_zero()) return Poly();
    if (l.is_one()) return r;
    if (r.is_one()) return l;
    std::map<Mono, Coeff, MonoBefore> acc;
    for (const auto& a : l.t_)
      for (const auto& b : r.t_) {
        Mono m = mono_mul(a.m, b.m);
        auto [it, fresh] = acc.try_emplace(m, a.c * b.c);
        if (!fresh) it->second += a.c * b.c;
      }
    Poly out;
    out.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) out.t_.push_back({m, c});
    return out;
  }

  Poly& operator+=(const Poly& r) { *this = *this + r; return *this; }
  Poly& operator-=(const Poly& r) { *this = *this - r; return *this; }
  Poly& operator*=(const Poly& r) { *this = *this * r; return *this; }

  friend bool operator==(const Poly& l, const Poly& r) {
    if (l.t_.size() != r.t_.size()) return false;
    for (size_t i = 0; i < l.t_.size(); ++i)
      if (!(l.t_[i].m == r.t_[i].m && l.t_[i].c == r.t_[i].c)) return false;
    return true;
  }
  friend bool operator!=(const Poly& l, const Poly& r) { return !(l == r); }

  Poly scaled(const Coeff& c) const {
    if (c.is_zero()) return Poly();
    Poly q = *this;
    for (auto& t : q.t_) t.c = t.c * c;
    return q;
  }

  Poly pow(int k) const {
    if (k < 0) throw Error("Poly::pow: negative exponent");
    Poly r(1), b = *this;
    while (k) {
      if (k & 1) r *= b;
      b = (k > 1) ? b * b : b;
      k >>= 1;
    }
    return r;
  }

  Poly partial(int v) const {
    Poly out;
    for (const auto& t : t_) {
      if (!t.m.e[v]) continue;
      Term d;
      d.m = t.m;
      d.m.e[v] -= 1;
      d.c = t.c * Coeff(t.m.e[v]);
      out.t_.push_back(d);
    }
    // order is preserved monomial-wise except ties broken identically; re-sort to be safe
    std::sort(out.t_.begin(), out.t_.end(),
              [](const Term& a, const Term& b) { return mono_before(a.m, b.m); });
    return out;
  }

  // homogeneous part of total degree d in the variable range [lo, hi)
  Poly grade_part(int lo, int hi, int d) const {
    Poly out;
    for (const auto& t : t_) {
      int dd = 0;
      for (int v = lo; v < hi; ++v) dd += t.m.e[v];
      if (dd == d) out.t_.push_back(t);
    }
    return out;
  }
  int degree_in_range(int lo, int hi) const {
    int d = 0;
    for (const auto& t : t_) {
      int dd = 0;
      for (int v = lo; v < hi; ++v) dd += t.m.e[v];
      d = std::max(d, dd);
    }
    return d;
  }

 private:
  std::vector<Term> t_;
};

inline Poly mono_poly(const Mono& m, const Coeff& c) {
  Poly out(c);
  for (int v = 0; v < kMaxVars; ++v)
    if (m.e[v]) out *= Poly::var(v, m.e[v]);
  return out;
}

// exact division; throws when not divisible (internal invariant violations)
inline Poly poly_exact_div(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error("poly_exact_div: zero divisor");
  if (num.is_zero()) return Poly();
  Poly r = num, q;
  const Mono dm = den.lead_mono();
  const Coeff dcinv = den.lead_coeff().inv();
  while (!r.is_zero()) {
    const Mono rm = r.lead_mono();
    if (!mono_divides(dm, rm)) throw Error("poly_exact_div: not divisible");
    Poly piece = mono_poly(mono_div(rm, dm), r.lead_coeff() * dcinv);
    q += piece;
    r -= piece * den;
  }
  return q;
}

namespace detail {

// coefficients of p viewed as univariate in v (index = power of v)
inline std::vector<Poly> univariate_coeffs(const Poly& p, int v) {
  std::vector<Poly> cs(static_cast<size_t>(p.degree_in(v)) + 1);
  for (const auto& t : p.terms()) {
    int k = t.m.e[v];
    Mono m = t.m;
    m.e[v] = 0;
    cs[k] += mono_poly(m, t.c);
  }
  return cs;
}

inline Poly lead_coeff_in(const Poly& p, int v) {
  auto cs = univariate_coeffs(p, v);
  return cs.back();
}

// pseudo-remainder of a by b with respect to v
inline Poly prem(Poly a, const Poly& b, int v) {
  int db = b.degree_in(v);
  Poly lb = lead_coeff_in(b, v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int da = a.degree_in(v);
    Poly la = lead_coeff_in(a, v);
    a = lb * a - la * Poly::var(v, da - db) * b;
  }
  return a;
}

}  // namespace detail

Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {
inline Poly content_in(const Poly& p, int v) {
  auto cs = univariate_coeffs(p, v);
  Poly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : poly_gcd(g, c);
    if (g.is_const()) break;
  }
  return g.is_zero() ? Poly(1) : g;
}
}  // namespace detail

// monic in the canonical order: leading coefficient 1
inline Poly poly_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.lead_coeff().inv());
}

namespace detail {

// substitute constants for all variables except keep_v, giving univariate coefficients
inline std::vector<Coeff> eval_univariate(const Poly& p, int keep_v,
                                          const std::array<int, kMaxVars>& pt) {
  std::vector<Coeff> cs(static_cast<size_t>(p.degree_in(keep_v)) + 1);
  for (const auto& t : p.terms()) {
    Coeff c = t.c;
    for (int v = 0; v < kMaxVars; ++v) {
      if (v == keep_v || !t.m.e[v]) continue;
      Coeff base(pt[v]);
      for (int k = 0; k < t.m.e[v]; ++k) c = c * base;
    }
    cs[t.m.e[keep_v]] += c;
  }
  while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
  return cs;
}

inline int univ_gcd_degree(std::vector<Coeff> a, std::vector<Coeff> b) {
  auto deg = [](const std::vector<Coeff>& u) {
    int d = static_cast<int>(u.size()) - 1;
    while (d >= 0 && u[d].is_zero()) --d;
    return d;
  };
  int da = deg(a), db = deg(b);
  if (da < 0) return db;
  if (db < 0) return da;
  while (true) {
    if (da < db) { std::swap(a, b); std::swap(da, db); }
    if (db < 0) return da;
    // a -= (la/lb) x^(da-db) b
    Coeff f = a[da] / b[db];
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    da = deg(a);
    if (da < 0) return db;
  }
}

// sound certificate that gcd(a, b) == 1: for every variable v, a specialization
// of the remaining variables that preserves deg_v of a or b and has coprime images
// proves deg_v(gcd) == 0.
inline bool coprime_certificate(const Poly& a, const Poly& b) {
  static const std::array<std::array<int, kMaxVars>, 4> kPoints = {{
      {2, 3, 5, 7, 11, 13, 17, 19},
      {-3, 2, -5, 7, -2, 3, -7, 5},
      {5, -4, 3, -2, 9, -8, 7, -6},
      {10, 9, -11, 4, -5, 12, 6, -13},
  }};
  for (int v = 0; v < kMaxVars; ++v) {
    int dav = a.degree_in(v), dbv = b.degree_in(v);
    if (dav == 0 && dbv == 0) continue;
    bool ok = false;
    for (const auto& pt : kPoints) {
      auto ua = eval_univariate(a, v, pt);
      auto ub = eval_univariate(b, v, pt);
      bool apreserved = static_cast<int>(ua.size()) - 1 == dav && !ua.back().is_zero();
      bool bpreserved = static_cast<int>(ub.size()) - 1 == dbv && !ub.back().is_zero();
      if (!apreserved && !bpreserved) continue;
      if (univ_gcd_degree(ua, ub) == 0) { ok = true; break; }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

namespace detail {
// componentwise-min exponent vector over all terms
inline Mono mono_content(const Poly& p) {
  Mono m;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (first) { m = t.m; first = false; continue; }
    for (int v = 0; v < kMaxVars; ++v) m.e[v] = std::min(m.e[v], t.m.e[v]);
  }
  return m;
}
inline Poly strip_mono(const Poly& p, const Mono& m) {
  if (m.is_const()) return p;
  return poly_exact_div(p, mono_poly(m, Coeff(1)));
}
}  // namespace detail

inline Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return poly_monic(b);
  if (b.is_zero()) return poly_monic(a);
  if (a.is_const() || b.is_const()) return Poly(1);
  // split off the common monomial factor first
  Mono ca = detail::mono_content(a), cb = detail::mono_content(b);
  Mono common;
  bool any = false, strip = false;
  for (int v = 0; v < kMaxVars; ++v) {
    common.e[v] = std::min(ca.e[v], cb.e[v]);
    any = any || common.e[v];
    strip = strip || ca.e[v] || cb.e[v];
  }
  if (strip) {
    Poly sa = detail::strip_mono(a, ca), sb = detail::strip_mono(b, cb);
    Poly g = poly_gcd(sa, sb);
    return any ? poly_monic(g * mono_poly(common, Coeff(1))) : g;
  }
  {
    Poly ma = poly_monic(a);
    if (ma == poly_monic(b)) return ma;
  }
  if (detail::coprime_certificate(a, b)) return Poly(1);
  int v = std::max(a.max_var(), b.max_var());
  // univariate over the coefficient field: plain monic Euclid
  auto only_var = [](const Poly& p, int w) {
    for (const auto& t : p.terms())
      for (int u = 0; u < kMaxVars; ++u)
        if (u != w && t.m.e[u]) return false;
    return true;
  };
  if (only_var(a, v) && only_var(b, v)) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
      // x mod y
      Poly r = x;
      int dy = y.degree_in(v);
      Coeff ly = detail::lead_coeff_in(y, v).const_coeff();
      while (!r.is_zero() && r.degree_in(v) >= dy) {
        int dr = r.degree_in(v);
        Coeff lr = detail::lead_coeff_in(r, v).const_coeff();
        r -= Poly::var(v, dr - dy).scaled(lr / ly) * y;
      }
      x = y;
      y = r;
    }
    return poly_monic(x);
  }
  if (!a.depends_on(v)) {
    // b depends on v, a does not: gcd(a, content_v(b))
    return poly_monic(poly_gcd(a, detail::content_in(b, v)));
  }
  if (!b.depends_on(v)) return poly_monic(poly_gcd(b, detail::content_in(a, v)));
  Poly cta = detail::content_in(a, v), ctb = detail::content_in(b, v);
  Poly pa = poly_exact_div(a, cta), pb = poly_exact_div(b, ctb);
  Poly cont = poly_gcd(cta, ctb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    Poly r = detail::prem(pa, pb, v);
    if (r.is_zero()) break;
    pa = pb;
    pb = poly_exact_div(r, detail::content_in(r, v));
  }
  if (pb.degree_in(v) == 0) return poly_monic(cont);
  return poly_monic(cont * pb);
}

// ---------------------------------------------------------------------------
// Chart: the coordinate context (x^1..x^n, p_1..p_n).

struct Chart {
  int n = 0;
  std::vector<std::string> names;  // size 2n: x-block then p-block

  static std::shared_ptr<const Chart> make(int n, std::vector<std::string> xnames = {}) {
    if (n < 1 || 2 * n > kMaxVars) throw Error("chart dimension out of range (1 <= n <= 4)");
    auto c = std::make_shared<Chart>();
    c->n = n;
    if (xnames.empty())
      for (int i = 1; i <= n; ++i) xnames.push_back("x" + std::to_string(i));
    if (static_cast<int>(xnames.size()) != n) throw Error("chart: need n coordinate names");
    c->names = xnames;
    for (int i = 1; i <= n; ++i) c->names.push_back("p" + std::to_string(i));
    return c;
  }

  int nvars() const { return 2 * n; }
  int xvar(int A) const { return A; }          // 0-based
  int pvar(int A) const { return n + A; }      // 0-based
  bool is_pvar(int v) const { return v >= n && v < 2 * n; }

  int find(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    // tolerate p_1 style aliases for p1
    if (name.size() > 1 && name[0] == 'p' && name[1] == '_') {
      std::string alt = "p" + name.substr(2);
      for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == alt) return static_cast<int>(i);
    }
    return -1;
  }
};

using ChartPtr = std::shared_ptr<const Chart>;

// ---------------------------------------------------------------------------
// Scalar: reduced fraction num/den, den monic in the canonical order.

class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(int v) : num_(v), den_(1) {}  // NOLINT
  Scalar(const Rat& v) : num_(Coeff(v)), den_(1) {}  // NOLINT
  Scalar(const Coeff& c) : num_(c), den_(1) {}  // NOLINT
  Scalar(Poly n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Scalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw Error("Scalar: zero denominator");
    reduce();
  }

  static Scalar var(int idx) { return Scalar(Poly::var(idx)); }
  static Scalar sqrt2() { return Scalar(Coeff::sqrt2()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_const() && den_.is_one(); }
  Coeff const_value() const {
    if (!is_constant()) throw Error("Scalar::const_value: not constant");
    return num_.const_coeff();
  }

  friend Scalar operator-(const Scalar& s) {
    Scalar r;
    r.num_ = -s.num_;
    r.den_ = s.den_;
    return r;
  }
  friend Scalar operator+(const Scalar& l, const Scalar& r) {
    if (l.is_zero()) return r;
    if (r.is_zero()) return l;
    if (l.den_.is_one() && r.den_.is_one()) return raw(l.num_ + r.num_, Poly(1));
    if (l.den_ == r.den_) return Scalar(l.num_ + r.num_, l.den_);
    Poly g = poly_gcd(l.den_, r.den_);
    if (g.is_one()) {
      // coprime denominators: the sum is already reduced
      return raw(l.num_ * r.den_ + r.num_ * l.den_, l.den_ * r.den_);
    }
    Poly ld = poly_exact_div(l.den_, g), rd = poly_exact_div(r.den_, g);
    return Scalar(l.num_ * rd + r.num_ * ld, l.den_ * rd);
  }
  friend Scalar operator-(const Scalar& l, const Scalar& r) { return l + (-r); }
  friend Scalar operator*(const Scalar& l, const Scalar& r) {
    if (l.is_zero() || r.is_zero()) return Scalar();
    if (l.den_.is_one() && r.den_.is_one()) return raw(l.num_ * r.num_, Poly(1));
    // reduce cross-wise against the small factors; the result needs no further gcd
    Poly g1 = poly_gcd(l.num_, r.den_), g2 = poly_gcd(r.num_, l.den_);
    Poly n = (g1.is_one() ? l.num_ : poly_exact_div(l.num_, g1)) *
             (g2.is_one() ? r.num_ : poly_exact_div(r.num_, g2));
    Poly d = (g2.is_one() ? l.den_ : poly_exact_div(l.den_, g2)) *
             (g1.is_one() ? r.den_ : poly_exact_div(r.den_, g1));
    return raw(std::move(n), std::move(d));
  }
  friend Scalar operator/(const Scalar& l, const Scalar& r) {
    if (r.is_zero()) throw Error("Scalar: division by zero");
    if (l.is_zero()) return Scalar();
    // inverse of r, with monic denominator
    Coeff ilc = r.num_.lead_coeff().inv();
    Scalar rinv = raw(r.den_.scaled(ilc), r.num_.scaled(ilc));
    return l * rinv;
  }
  Scalar& operator+=(const Scalar& r) { *this = *this + r; return *this; }
  Scalar& operator-=(const Scalar& r) { *this = *this - r; return *this; }
  Scalar& operator*=(const Scalar& r) { *this = *this * r; return *this; }
  Scalar& operator/=(const Scalar& r) { *this = *this / r; return *this; }

  friend bool operator==(const Scalar& l, const Scalar& r) {
    // representations are canonical, so structural equality is exact equality
    return l.num_ == r.num_ && l.den_ == r.den_;
  }
  friend bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }

  Scalar pow(int k) const {
    if (k == 0) return Scalar(1);
    if (k < 0) return Scalar(1) / pow(-k);
    Scalar r;
    r.num_ = num_.pow(k);
    r.den_ = den_.pow(k);
    return r;  // reduced inputs stay reduced under powers
  }

  Scalar partial(int v) const {
    if (den_.is_one()) {
      Scalar r;
      r.num_ = num_.partial(v);
      return r;
    }
    // quotient rule
    return Scalar(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
  }

  bool depends_on(int v) const { return num_.depends_on(v) || den_.depends_on(v); }

  // substitute variables: repl[v] (when set) replaces variable v
  Scalar subst(const std::vector<std::optional<Scalar>>& repl) const {
    auto apply = [&](const Poly& p) {
      Scalar acc;
      for (const auto& t : p.terms()) {
        Scalar term{Coeff(t.c)};
        for (int v = 0; v < kMaxVars; ++v) {
          if (!t.m.e[v]) continue;
          Scalar base = (v < static_cast<int>(repl.size()) && repl[v]) ? *repl[v] : Scalar::var(v);
          term *= base.pow(t.m.e[v]);
        }
        acc += term;
      }
      return acc;
    };
    return apply(num_) / apply(den_);
  }

 private:
  // trusted constructor: inputs already reduced, den monic
  static Scalar raw(Poly n, Poly d) {
    Scalar s;
    s.num_ = std::move(n);
    s.den_ = std::move(d);
    if (s.num_.is_zero()) s.den_ = Poly(1);
    return s;
  }

  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    if (!den_.is_one()) {
      Poly g = poly_gcd(num_, den_);
      if (!g.is_one()) {
        num_ = poly_exact_div(num_, g);
        den_ = poly_exact_div(den_, g);
      }
      if (!den_.is_one()) {
        Coeff lc = den_.lead_coeff();
        if (!lc.is_one()) {
          Coeff ilc = lc.inv();
          num_ = num_.scaled(ilc);
          den_ = den_.scaled(ilc);
        }
        if (den_.is_one()) den_ = Poly(1);
      }
    }
  }

  Poly num_, den_;
};

// ---------------------------------------------------------------------------
// Printing (canonical: graded lex term order fixed by the chart's variable list).

inline std::string mono_str(const Mono& m, const Chart& chart) {
  std::string s;
  for (int v = 0; v < chart.nvars(); ++v) {
    if (!m.e[v]) continue;
    if (!s.empty()) s += "*";
    s += chart.names[v];
    if (m.e[v] > 1) s += "^" + std::to_string(static_cast<int>(m.e[v]));
  }
  return s;
}

inline std::string poly_str(const Poly& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string cs = t.c.str();
    std::string ms = mono_str(t.m, chart);
    std::string term;
    if (ms.empty()) {
      term = cs;
    } else if (t.c.is_one()) {
      term = ms;
    } else if ((-t.c).is_one()) {
      term = "-" + ms;
    } else {
      term = cs + "*" + ms;
    }
    if (first) {
      out = term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

inline std::string scalar_str(const Scalar& s, const Chart& chart) {
  if (s.is_polynomial()) return poly_str(s.num(), chart);
  return "(" + poly_str(s.num(), chart) + ")/(" + poly_str(s.den(), chart) + ")";
}

// ---------------------------------------------------------------------------
// Parsing: integers, variable names, sqrt2, + - * / ^ ( ).

struct ParseError : Error {
  int column;
  ParseError(const std::string& msg, int col)
      : Error(msg + " (column " + std::to_string(col + 1) + ")"), column(col) {}
};

namespace detail {

class ScalarParser {
 public:
  ScalarParser(const std::string& src, const Chart& chart) : s_(src), chart_(chart) {}

  Scalar parse() {
    Scalar v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", static_cast<int>(pos_));
    return v;
  }

 private:
  Scalar expr() {
    Scalar v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') { ++pos_; v += term(); }
      else if (peek() == '-') { ++pos_; v -= term(); }
      else break;
    }
    return v;
  }
  Scalar term() {
    Scalar v = factor();
    while (true) {
      skip_ws();
      if (peek() == '*') { ++pos_; v *= factor(); }
      else if (peek() == '/') {
        ++pos_;
        Scalar d = factor();
        if (d.is_zero()) throw ParseError("division by zero", static_cast<int>(pos_));
        v /= d;
      } else break;
    }
    return v;
  }
  Scalar factor() {
    skip_ws();
    bool neg = false;
    while (peek() == '-' || peek() == '+') {
      if (peek() == '-') neg = !neg;
      ++pos_;
      skip_ws();
    }
    Scalar v = primary();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool eneg = false;
      if (peek() == '-') { eneg = true; ++pos_; }
      int start = static_cast<int>(pos_);
      std::string digits;
      while (isdigit(peek())) digits += s_[pos_++];
      if (digits.empty()) throw ParseError("expected integer exponent", start);
      int e = std::stoi(digits);
      v = v.pow(eneg ? -e : e);
    }
    return neg ? -v : v;
  }
  Scalar primary() {
    skip_ws();
    int start = static_cast<int>(pos_);
    char c = peek();
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", static_cast<int>(pos_));
      ++pos_;
      return v;
    }
    if (isdigit(c)) {
      std::string digits;
      while (isdigit(peek())) digits += s_[pos_++];
      return Scalar(Rat(mpz_class(digits, 10)));
    }
    if (isalpha(c) || c == '_') {
      std::string name;
      while (isalnum(peek()) || peek() == '_') name += s_[pos_++];
      if (name == "sqrt2") return Scalar::sqrt2();
      int idx = chart_.find(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", start);
      return Scalar::var(idx);
    }
    if (c == '\0') throw ParseError("unexpected end of input", start);
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const std::string& s_;
  const Chart& chart_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Scalar parse_scalar(const std::string& src, const Chart& chart) {
  return detail::ScalarParser(src, chart).parse();
}

// partial derivative by variable name; unknown names are rejected
inline Scalar partial(const Scalar& f, const std::string& var, const Chart& chart) {
  int idx = chart.find(var);
  if (idx < 0) throw Error("partial: unknown variable '" + var + "'");
  return f.partial(idx);
}

}  // namespace pwlab
