// Dense indexed tensor fields over the exact scalar field.
//
// Slots are typed by manifold (M = base, Mt = total space of the extension)
// and variance. M-based tensors may depend on the x-variables only. Integer
// projective (pw) and conformal (cw) weights ride along as metadata; the
// covariant derivatives consume pw, cw is bookkeeping.

#pragma once

#include <functional>
#include <initializer_list>
#include <numeric>

#include "pwlab/scalar.hpp"

namespace pwlab {

enum class Space : uint8_t { MUp, MDown, MtUp, MtDown };

inline bool on_base(Space s) { return s == Space::MUp || s == Space::MDown; }
inline bool is_up(Space s) { return s == Space::MUp || s == Space::MtUp; }
inline Space dual_space(Space s) {
  switch (s) {
    case Space::MUp: return Space::MDown;
    case Space::MDown: return Space::MUp;
    case Space::MtUp: return Space::MtDown;
    case Space::MtDown: return Space::MtUp;
  }
  throw Error("dual_space: bad space");
}

class TensorField {
 public:
  TensorField() = default;
  TensorField(ChartPtr chart, std::vector<Space> slots, int pw = 0, int cw = 0)
      : chart_(std::move(chart)), slots_(std::move(slots)), pw_(pw), cw_(cw) {
    size_t sz = 1;
    for (auto s : slots_) sz *= dim(s);
    c_.assign(sz, Scalar());
  }

  static TensorField scalar(ChartPtr chart, Scalar v, int pw = 0, int cw = 0) {
    TensorField t(std::move(chart), {}, pw, cw);
    t.c_[0] = std::move(v);
    return t;
  }

  // identity delta_A^B on the chosen manifold
  static TensorField delta(ChartPtr chart, bool base) {
    TensorField t(chart, base ? std::vector<Space>{Space::MDown, Space::MUp}
                              : std::vector<Space>{Space::MtDown, Space::MtUp});
    int d = base ? chart->n : 2 * chart->n;
    for (int i = 0; i < d; ++i) t.at({i, i}) = Scalar(1);
    return t;
  }

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Space>& slots() const { return slots_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  int pw() const { return pw_; }
  int cw() const { return cw_; }
  TensorField& set_pw(int w) { pw_ = w; return *this; }
  TensorField& set_cw(int w) { cw_ = w; return *this; }

  int dim(Space s) const { return on_base(s) ? chart_->n : 2 * chart_->n; }
  int dim(int slot) const { return dim(slots_[slot]); }
  size_t size() const { return c_.size(); }

  Scalar& at(std::initializer_list<int> idx) { return c_[offset(idx)]; }
  const Scalar& at(std::initializer_list<int> idx) const { return c_[offset(idx)]; }
  Scalar& atv(const std::vector<int>& idx) { return c_[offsetv(idx)]; }
  const Scalar& atv(const std::vector<int>& idx) const { return c_[offsetv(idx)]; }
  Scalar& flat(size_t i) { return c_[i]; }
  const Scalar& flat(size_t i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& s : c_)
      if (!s.is_zero()) return false;
    return true;
  }

  bool depends_on_p() const {
    for (const auto& s : c_)
      for (int A = 0; A < chart_->n; ++A)
        if (s.depends_on(chart_->pvar(A))) return true;
    return false;
  }

  // iterate over all index tuples
  void for_each(const std::function<void(const std::vector<int>&, const Scalar&)>& f) const {
    std::vector<int> idx(slots_.size(), 0);
    for (size_t off = 0; off < c_.size(); ++off) {
      f(idx, c_[off]);
      bump(idx);
    }
  }
  void for_each_mut(const std::function<void(const std::vector<int>&, Scalar&)>& f) {
    std::vector<int> idx(slots_.size(), 0);
    for (size_t off = 0; off < c_.size(); ++off) {
      f(idx, c_[off]);
      bump(idx);
    }
  }

  friend TensorField operator+(const TensorField& l, const TensorField& r) {
    l.require_same_shape(r);
    TensorField out = l;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += r.c_[i];
    return out;
  }
  friend TensorField operator-(const TensorField& l, const TensorField& r) {
    l.require_same_shape(r);
    TensorField out = l;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= r.c_[i];
    return out;
  }
  friend TensorField operator-(const TensorField& t) {
    TensorField out = t;
    for (auto& s : out.c_) s = -s;
    return out;
  }
  friend TensorField operator*(const Scalar& s, const TensorField& t) {
    TensorField out = t;
    for (auto& v : out.c_) v = s * v;
    return out;
  }
  friend bool operator==(const TensorField& l, const TensorField& r) {
    if (l.slots_ != r.slots_) return false;
    for (size_t i = 0; i < l.c_.size(); ++i)
      if (l.c_[i] != r.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const TensorField& l, const TensorField& r) { return !(l == r); }

  void require_same_shape(const TensorField& o) const {
    if (slots_ != o.slots_) throw Error("tensor shape mismatch");
    if (pw_ != o.pw_ || cw_ != o.cw_) throw Error("tensor weight mismatch");
  }

 private:
  size_t offset(std::initializer_list<int> idx) const {
    size_t off = 0;
    int k = 0;
    for (int i : idx) off = off * dim(slots_[k]) + i, ++k;
    if (k != rank()) throw Error("tensor index arity mismatch");
    return off;
  }
  size_t offsetv(const std::vector<int>& idx) const {
    size_t off = 0;
    for (size_t k = 0; k < idx.size(); ++k) off = off * dim(slots_[k]) + idx[k];
    if (idx.size() != slots_.size()) throw Error("tensor index arity mismatch");
    return off;
  }
  void bump(std::vector<int>& idx) const {
    for (int k = rank() - 1; k >= 0; --k) {
      if (++idx[k] < dim(slots_[k])) return;
      idx[k] = 0;
    }
  }

  ChartPtr chart_;
  std::vector<Space> slots_;
  std::vector<Scalar> c_;
  int pw_ = 0, cw_ = 0;
};

// ---------------------------------------------------------------------------
// Algebra

inline TensorField outer(const TensorField& l, const TensorField& r) {
  std::vector<Space> slots = l.slots();
  slots.insert(slots.end(), r.slots().begin(), r.slots().end());
  TensorField out(l.chart(), slots, l.pw() + r.pw(), l.cw() + r.cw());
  size_t rs = r.size();
  for (size_t i = 0; i < l.size(); ++i) {
    if (l.flat(i).is_zero()) continue;
    for (size_t j = 0; j < rs; ++j) {
      if (r.flat(j).is_zero()) continue;
      out.flat(i * rs + j) = l.flat(i) * r.flat(j);
    }
  }
  return out;
}

// trace over slots i, j (dual variance over the same manifold); weights add up in place
inline TensorField contract(const TensorField& t, int si, int sj) {
  if (si == sj || si >= t.rank() || sj >= t.rank() || si < 0 || sj < 0)
    throw Error("contract: bad slot pair");
  if (si > sj) std::swap(si, sj);
  Space a = t.slots()[si], b = t.slots()[sj];
  if (on_base(a) != on_base(b) || is_up(a) == is_up(b))
    throw Error("contract: slots are not a dual pair over one manifold");
  std::vector<Space> slots;
  for (int k = 0; k < t.rank(); ++k)
    if (k != si && k != sj) slots.push_back(t.slots()[k]);
  TensorField out(t.chart(), slots, t.pw(), t.cw());
  int d = t.dim(si);
  std::vector<int> idx(t.rank(), 0);
  out.for_each_mut([&](const std::vector<int>& oidx, Scalar& val) {
    int k = 0;
    for (int m = 0; m < t.rank(); ++m) {
      if (m == si || m == sj) continue;
      idx[m] = oidx[k++];
    }
    Scalar acc;
    for (int r = 0; r < d; ++r) {
      idx[si] = idx[sj] = r;
      acc += t.atv(idx);
    }
    val = acc;
  });
  return out;
}

inline TensorField permute(const TensorField& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.rank()) throw Error("permute: arity mismatch");
  std::vector<Space> slots(t.rank());
  for (int k = 0; k < t.rank(); ++k) slots[k] = t.slots()[perm[k]];
  TensorField out(t.chart(), slots, t.pw(), t.cw());
  std::vector<int> src(t.rank());
  out.for_each_mut([&](const std::vector<int>& idx, Scalar& val) {
    for (int k = 0; k < t.rank(); ++k) src[perm[k]] = idx[k];
    val = t.atv(src);
  });
  return out;
}

namespace detail {
inline void permutations(int k, std::vector<std::vector<int>>& out) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
}
inline int perm_sign(std::vector<int> p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}
}  // namespace detail

// group average over the listed slots, with sign for antisym (1/k! convention)
inline TensorField symmetrize(const TensorField& t, const std::vector<int>& group, bool antisym) {
  for (size_t i = 0; i + 1 < group.size(); ++i)
    if (t.slots()[group[i]] != t.slots()[group[i + 1]])
      throw Error("symmetrize: slots differ in space/variance");
  std::vector<std::vector<int>> perms;
  detail::permutations(static_cast<int>(group.size()), perms);
  TensorField acc(t.chart(), t.slots(), t.pw(), t.cw());
  std::vector<int> src(t.rank());
  Scalar inv_fact = Scalar(1) / Scalar(static_cast<int>(perms.size()));
  acc.for_each_mut([&](const std::vector<int>& idx, Scalar& val) {
    Scalar sum;
    for (const auto& p : perms) {
      for (int k = 0; k < t.rank(); ++k) src[k] = idx[k];
      for (size_t g = 0; g < group.size(); ++g) src[group[g]] = idx[group[p[g]]];
      Scalar v = t.atv(src);
      if (antisym && detail::perm_sign(p) < 0) v = -v;
      sum += v;
    }
    val = inv_fact * sum;
  });
  return acc;
}

inline TensorField sym2(const TensorField& t, int i, int j) { return symmetrize(t, {i, j}, false); }
inline TensorField antisym2(const TensorField& t, int i, int j) { return symmetrize(t, {i, j}, true); }

// component-wise partial derivative, prepends a slot of the given space
inline TensorField coordinate_partial(const TensorField& t, bool base_slot) {
  Space ds = base_slot ? Space::MDown : Space::MtDown;
  std::vector<Space> slots{ds};
  slots.insert(slots.end(), t.slots().begin(), t.slots().end());
  TensorField out(t.chart(), slots, t.pw(), t.cw());
  const Chart& ch = *t.chart();
  out.for_each_mut([&](const std::vector<int>& idx, Scalar& val) {
    std::vector<int> rest(idx.begin() + 1, idx.end());
    int v = base_slot ? ch.xvar(idx[0]) : idx[0];
    val = t.atv(rest).partial(v);
  });
  return out;
}

// degree-d part in the fiber variables, component-wise
inline TensorField grade_in_p(const TensorField& t, int d) {
  const Chart& ch = *t.chart();
  TensorField out(t.chart(), t.slots(), t.pw(), t.cw());
  for (size_t i = 0; i < t.size(); ++i) {
    const Scalar& s = t.flat(i);
    if (s.is_zero()) continue;
    if (s.den().degree_in_range(ch.n, 2 * ch.n) != 0)
      throw Error("grade_in_p: component not polynomial in the fiber variables");
    out.flat(i) = Scalar(s.num().grade_part(ch.n, 2 * ch.n, d), s.den());
  }
  return out;
}

inline int max_p_degree(const TensorField& t) {
  const Chart& ch = *t.chart();
  int d = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    const Scalar& s = t.flat(i);
    if (s.is_zero()) continue;
    if (s.den().degree_in_range(ch.n, 2 * ch.n) != 0)
      throw Error("max_p_degree: component not polynomial in the fiber variables");
    d = std::max(d, s.num().degree_in_range(ch.n, 2 * ch.n));
  }
  return d;
}

// totally antisymmetric coordinate volume symbol on M (n lower slots)
inline TensorField levi_civita_down(const ChartPtr& chart, int pw = 0) {
  int n = chart->n;
  TensorField eps(chart, std::vector<Space>(n, Space::MDown), pw);
  std::vector<std::vector<int>> perms;
  detail::permutations(n, perms);
  for (const auto& p : perms) eps.atv(p) = Scalar(detail::perm_sign(p));
  return eps;
}

inline TensorField levi_civita_up(const ChartPtr& chart, int pw = 0) {
  int n = chart->n;
  TensorField eps(chart, std::vector<Space>(n, Space::MUp), pw);
  std::vector<std::vector<int>> perms;
  detail::permutations(n, perms);
  for (const auto& p : perms) eps.atv(p) = Scalar(detail::perm_sign(p));
  return eps;
}

// pretty-print the nonzero components, "name[i,j,..] = value" (1-based indices)
inline std::string tensor_nonzero_str(const TensorField& t, const std::string& name,
                                      size_t max_entries = 16) {
  std::ostringstream os;
  size_t count = 0;
  t.for_each([&](const std::vector<int>& idx, const Scalar& v) {
    if (v.is_zero() || count >= max_entries) return;
    if (count) os << "; ";
    os << name;
    if (!idx.empty()) {
      os << "[";
      for (size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k] + 1;
      os << "]";
    }
    os << " = " << scalar_str(v, *t.chart());
    ++count;
  });
  return os.str();
}

}  // namespace pwlab
