#pragma once

// Alternating k-forms over a Lie algebra of derivations.
//
// A KForm stores its values on strictly increasing index tuples; every other
// tuple is recovered by antisymmetry. Zero components are never stored.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "nclc/lie.hpp"

namespace nclc {

using Indices = std::vector<std::size_t>;

namespace detail {

// Sorts idx in place and returns the permutation sign, or 0 on a repeat.
inline int sort_with_sign(Indices& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

inline void for_each_increasing(std::size_t n, std::size_t k, Indices& cur, std::size_t from,
                                const auto& fn) {
  if (cur.size() == k) {
    fn(static_cast<const Indices&>(cur));
    return;
  }
  for (std::size_t a = from; a < n; ++a) {
    cur.push_back(a);
    for_each_increasing(n, k, cur, a + 1, fn);
    cur.pop_back();
  }
}

}  // namespace detail

/// Calls fn(tuple) for every strictly increasing k-tuple over 0..n-1.
template <class Fn>
void for_each_increasing(std::size_t n, std::size_t k, Fn fn) {
  Indices cur;
  if (k > n) return;
  detail::for_each_increasing(n, k, cur, 0, fn);
}

class KForm {
 public:
  using Components = std::map<Indices, AlgebraElement>;

  KForm() = default;
  KForm(const Algebra& alg, std::size_t dim, std::size_t degree)
      : alg_(alg), dim_(dim), degree_(degree) {}

  static KForm zero(const LieAlgebra& g, std::size_t degree) {
    return KForm(g.algebra(), g.dim(), degree);
  }

  static KForm function(const LieAlgebra& g, const AlgebraElement& f) {
    KForm r(g.algebra(), g.dim(), 0);
    r.set({}, f);
    return r;
  }

  /// theta^i with theta^i(delta_a) = delta^i_a.
  static KForm dual_basis(const LieAlgebra& g, std::size_t i) {
    KForm r(g.algebra(), g.dim(), 1);
    r.set({i}, AlgebraElement::one(g.algebra()));
    return r;
  }

  const Algebra& algebra() const { return alg_; }
  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  /// Sets the value on an arbitrary tuple; the stored component absorbs the sign.
  void set(Indices idx, const AlgebraElement& value) {
    check_tuple(idx);
    int sign = detail::sort_with_sign(idx);
    if (sign == 0) {
      if (!value.is_zero()) throw Error(ErrorKind::IndexOutOfRange, "repeated index in a form component");
      return;
    }
    AlgebraElement v = sign > 0 ? value : -value;
    if (v.is_zero()) comps_.erase(idx);
    else comps_.insert_or_assign(std::move(idx), std::move(v));
  }

  void add(Indices idx, const AlgebraElement& value) {
    Indices sorted = idx;
    int sign = detail::sort_with_sign(sorted);
    check_tuple(idx);
    if (sign == 0 || value.is_zero()) return;
    auto it = comps_.find(sorted);
    AlgebraElement v = sign > 0 ? value : -value;
    if (it == comps_.end()) {
      comps_.emplace(std::move(sorted), std::move(v));
      return;
    }
    it->second += v;
    if (it->second.is_zero()) comps_.erase(it);
  }

  AlgebraElement operator()(Indices idx) const {
    check_tuple(idx);
    int sign = detail::sort_with_sign(idx);
    if (sign == 0) return AlgebraElement::zero(alg_);
    auto it = comps_.find(idx);
    if (it == comps_.end()) return AlgebraElement::zero(alg_);
    return sign > 0 ? it->second : -it->second;
  }

  KForm& operator+=(const KForm& o) {
    check_compatible(o);
    for (const auto& [idx, v] : o.comps_) add(idx, v);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_compatible(o);
    for (const auto& [idx, v] : o.comps_) add(idx, -v);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(const KForm& a) {
    KForm r(a.alg_, a.dim_, a.degree_);
    for (const auto& [idx, v] : a.comps_) r.comps_.emplace(idx, -v);
    return r;
  }

  /// Left and right module actions.
  friend KForm operator*(const AlgebraElement& f, const KForm& w) {
    KForm r(w.alg_, w.dim_, w.degree_);
    for (const auto& [idx, v] : w.comps_) r.add(idx, f * v);
    return r;
  }
  friend KForm operator*(const KForm& w, const AlgebraElement& f) {
    KForm r(w.alg_, w.dim_, w.degree_);
    for (const auto& [idx, v] : w.comps_) r.add(idx, v * f);
    return r;
  }
  friend KForm operator*(const Complex& s, const KForm& w) {
    KForm r(w.alg_, w.dim_, w.degree_);
    for (const auto& [idx, v] : w.comps_) r.add(idx, s * v);
    return r;
  }

  friend bool operator==(const KForm& a, const KForm& b) {
    return a.alg_ == b.alg_ && a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  void check_compatible(const KForm& o) const {
    if (!(alg_ == o.alg_) || dim_ != o.dim_ || degree_ != o.degree_)
      throw Error(ErrorKind::DescriptorMismatch, "forms differ in algebra, dimension or degree");
  }

 private:
  void check_tuple(const Indices& idx) const {
    if (idx.size() != degree_)
      throw Error(ErrorKind::IndexOutOfRange, "expected " + std::to_string(degree_) + " indices");
    for (std::size_t a : idx)
      if (a >= dim_) throw Error(ErrorKind::IndexOutOfRange, "form index " + std::to_string(a + 1));
  }

  Algebra alg_;
  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  Components comps_;
};

inline AlgebraElement eval(const KForm& w, const Indices& idx) { return w(idx); }

inline KForm exterior_derivative(const LieAlgebra& g, const KForm& w) {
  if (w.dim() != g.dim() || !(w.algebra() == g.algebra()))
    throw Error(ErrorKind::DescriptorMismatch, "form does not belong to this Lie algebra");
  const std::size_t k = w.degree();
  KForm r = KForm::zero(g, k + 1);
  if (k + 1 > g.dim()) return r;
  for_each_increasing(g.dim(), k + 1, [&](const Indices& x) {
    AlgebraElement v = AlgebraElement::zero(g.algebra());
    for (std::size_t i = 0; i <= k; ++i) {
      Indices rest = x;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      AlgebraElement term = g.derive(x[i], w(rest));
      if (i % 2 == 0) v += term;
      else v -= term;
    }
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j) {
        Indices rest;
        for (std::size_t p = 0; p <= k; ++p)
          if (p != i && p != j) rest.push_back(x[p]);
        AlgebraElement bracket = AlgebraElement::zero(g.algebra());
        for (std::size_t e = 0; e < g.dim(); ++e) {
          const Rational& c = g.c(e, x[i], x[j]);
          if (c == 0) continue;
          Indices args{e};
          args.insert(args.end(), rest.begin(), rest.end());
          bracket += Complex(c) * w(args);
        }
        if ((i + j) % 2 == 0) v += bracket;
        else v -= bracket;
      }
    r.set(x, v);
  });
  return r;
}

/// Graded product, summed over (k,l)-shuffles.
inline KForm wedge(const KForm& w, const KForm& t) {
  if (!(w.algebra() == t.algebra()) || w.dim() != t.dim())
    throw Error(ErrorKind::DescriptorMismatch, "wedge of forms over different algebras");
  const std::size_t k = w.degree(), l = t.degree(), n = w.dim();
  KForm r(w.algebra(), n, k + l);
  if (k + l > n) return r;
  for_each_increasing(n, k + l, [&](const Indices& x) {
    AlgebraElement v = AlgebraElement::zero(w.algebra());
    for_each_increasing(k + l, k, [&](const Indices& pos) {
      Indices left, right, perm;
      std::vector<bool> used(k + l, false);
      for (std::size_t p : pos) {
        left.push_back(x[p]);
        used[p] = true;
        perm.push_back(p);
      }
      for (std::size_t p = 0; p < k + l; ++p)
        if (!used[p]) {
          right.push_back(x[p]);
          perm.push_back(p);
        }
      int sign = detail::sort_with_sign(perm);
      AlgebraElement a = w(left);
      if (a.is_zero()) return;
      AlgebraElement b = t(right);
      if (b.is_zero()) return;
      if (sign > 0) v += a * b;
      else v -= a * b;
    });
    r.set(x, v);
  });
  return r;
}

/// The hermitian basis makes this componentwise star.
inline KForm form_star(const KForm& w) {
  KForm r(w.algebra(), w.dim(), w.degree());
  for (const auto& [idx, v] : w.components()) r.set(idx, star(v));
  return r;
}

inline KForm d(const LieAlgebra& g, const AlgebraElement& f) {
  return exterior_derivative(g, KForm::function(g, f));
}

}  // namespace nclc
