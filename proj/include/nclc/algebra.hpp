#pragma once

// Exact arithmetic in the noncommutative torus *-algebra generated by unitaries
// U_1..U_n with U_i U_j = q_ij U_j U_i. The q_ab (a < b) are kept as formal
// unimodular symbols, so coefficients are Laurent polynomials in the q_ab with
// Gaussian-rational coefficients.
//
// Normal form: every monomial is U_1^k_1 ... U_n^k_n (ascending generator
// index). Moving U_i^a to the right past U_j^b (j < i) costs q_ji^(-a*b).

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "nclc/error.hpp"
#include "nclc/scalar.hpp"

namespace nclc {

using Exponents = std::vector<int>;

/// Which torus: number of generators and whether the q-phases collapse to 1.
struct Algebra {
  std::size_t n = 1;
  bool commutative = false;

  Algebra() = default;
  Algebra(std::size_t generators, bool is_commutative = false)
      : n(generators), commutative(is_commutative) {
    if (n < 1) throw Error(ErrorKind::IndexOutOfRange, "algebra needs at least one generator");
  }

  std::size_t pair_count() const { return n * (n - 1) / 2; }

  /// Slot of q_ab (0-based, a < b) inside a phase exponent vector.
  std::size_t pair_index(std::size_t a, std::size_t b) const {
    return a * n - a * (a + 1) / 2 + (b - a - 1);
  }

  friend bool operator==(const Algebra&, const Algebra&) = default;
};

inline void add_into(Exponents& acc, const Exponents& e) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += e[i];
}

inline Exponents negated(Exponents e) {
  for (int& v : e) v = -v;
  return e;
}

/// Finite sum  sum_e c_e q^e  with Gaussian-rational c_e.
class PhaseScalar {
 public:
  using Terms = std::map<Exponents, Complex>;

  PhaseScalar() = default;
  PhaseScalar(Complex c, Exponents e) {
    if (!c.is_zero()) terms_.emplace(std::move(e), std::move(c));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }

  PhaseScalar& operator+=(const PhaseScalar& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }
  PhaseScalar& operator-=(const PhaseScalar& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }

  friend PhaseScalar operator+(PhaseScalar a, const PhaseScalar& b) { return a += b; }
  friend PhaseScalar operator-(PhaseScalar a, const PhaseScalar& b) { return a -= b; }
  friend PhaseScalar operator-(const PhaseScalar& a) {
    PhaseScalar r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b) {
    PhaseScalar r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        add_into(e, eb);
        r.accumulate(e, ca * cb);
      }
    }
    return r;
  }

  PhaseScalar scaled(const Complex& s) const {
    PhaseScalar r;
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  /// Multiply by the single phase monomial q^shift.
  PhaseScalar shifted(const Exponents& shift) const {
    PhaseScalar r;
    for (const auto& [e, c] : terms_) {
      Exponents k = e;
      add_into(k, shift);
      r.terms_.emplace(std::move(k), c);
    }
    return r;
  }

  /// Complex conjugation: q -> q^-1 and c -> conj(c).
  PhaseScalar conj() const {
    PhaseScalar r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(negated(e), c.conj());
    return r;
  }

  /// Sets every phase exponent to zero (the q = 1 specialization).
  PhaseScalar collapsed() const {
    PhaseScalar r;
    for (const auto& [e, c] : terms_) r.accumulate(Exponents(e.size(), 0), c);
    return r;
  }

  PhaseScalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::ZeroElement, "inverse of zero coefficient");
    if (!is_single_term())
      throw Error(ErrorKind::NotMonomial, "coefficient with several phase terms is not a unit");
    const auto& [e, c] = *terms_.begin();
    return PhaseScalar(c.inverse(), negated(e));
  }

  friend bool operator==(const PhaseScalar&, const PhaseScalar&) = default;

  /// *this += a * b * q^shift (shift may be null for no shift).
  void add_product(const PhaseScalar& a, const PhaseScalar& b, const Exponents* shift) {
    thread_local Exponents e;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        e = ea;
        add_into(e, eb);
        if (shift) add_into(e, *shift);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
          terms_.emplace(e, ca * cb);
        } else {
          it->second.add_product(ca, cb);
          if (it->second.is_zero()) terms_.erase(it);
        }
      }
    }
  }

 private:
  void accumulate(const Exponents& e, const Complex& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Element of the torus algebra in normal form: monomial exponent -> coefficient.
class AlgebraElement {
 public:
  using Terms = std::map<Exponents, PhaseScalar>;

  AlgebraElement() = default;
  explicit AlgebraElement(Algebra algebra) : algebra_(algebra) {}

  static AlgebraElement zero(const Algebra& alg) { return AlgebraElement(alg); }

  static AlgebraElement scalar(const Algebra& alg, const Complex& c) {
    AlgebraElement r(alg);
    r.add_term(Exponents(alg.n, 0), PhaseScalar(c, Exponents(alg.pair_count(), 0)));
    return r;
  }

  static AlgebraElement one(const Algebra& alg) { return scalar(alg, Complex(1)); }

  /// U_g^power, g 0-based.
  static AlgebraElement generator(const Algebra& alg, std::size_t g, int power = 1) {
    if (g >= alg.n) throw Error(ErrorKind::IndexOutOfRange, "generator index out of range");
    Exponents k(alg.n, 0);
    k[g] = power;
    AlgebraElement r(alg);
    r.add_term(std::move(k), PhaseScalar(Complex(1), Exponents(alg.pair_count(), 0)));
    return r;
  }

  /// The phase symbol q_ab (0-based). q_ba = q_ab^-1 and q_aa = 1.
  static AlgebraElement phase(const Algebra& alg, std::size_t a, std::size_t b, int power = 1) {
    if (a >= alg.n || b >= alg.n)
      throw Error(ErrorKind::IndexOutOfRange, "phase symbol index out of range");
    Exponents e(alg.pair_count(), 0);
    if (a < b) e[alg.pair_index(a, b)] = power;
    if (a > b) e[alg.pair_index(b, a)] = -power;
    AlgebraElement r(alg);
    r.add_term(Exponents(alg.n, 0), PhaseScalar(Complex(1), std::move(e)));
    return r;
  }

  const Algebra& algebra() const { return algebra_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coefficient * U^monomial, keeping the normal form.
  void add_term(const Exponents& monomial, const PhaseScalar& coefficient) {
    if (coefficient.is_zero()) return;
    PhaseScalar c = algebra_.commutative ? coefficient.collapsed() : coefficient;
    auto [it, inserted] = terms_.try_emplace(monomial, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(const AlgebraElement& a) {
    AlgebraElement r(a.algebra_);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }

  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    x.check_same(y);
    const Algebra& alg = x.algebra_;
    AlgebraElement r(alg);
    // Coefficients of a commutative algebra are already collapsed, so no shift is needed there.
    Exponents kl, shift;
    for (const auto& [k, p] : x.terms_) {
      for (const auto& [l, s] : y.terms_) {
        kl = k;
        add_into(kl, l);
        if (!alg.commutative) reorder_phase_into(alg, k, l, shift);
        auto it = r.terms_.find(kl);
        if (it == r.terms_.end()) it = r.terms_.emplace(kl, PhaseScalar()).first;
        it->second.add_product(p, s, alg.commutative ? nullptr : &shift);
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }

  friend AlgebraElement operator*(const Complex& s, const AlgebraElement& x) {
    AlgebraElement r(x.algebra_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : x.terms_) r.terms_.emplace(k, c.scaled(s));
    return r;
  }
  friend AlgebraElement operator*(const AlgebraElement& x, const Complex& s) { return s * x; }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  /// Phase exponent picked up by U^k U^l -> (phase) U^(k+l).
  static Exponents reorder_phase(const Algebra& alg, const Exponents& k, const Exponents& l) {
    Exponents e;
    reorder_phase_into(alg, k, l, e);
    return e;
  }

  static void reorder_phase_into(const Algebra& alg, const Exponents& k, const Exponents& l, Exponents& e) {
    e.assign(alg.pair_count(), 0);
    for (std::size_t i = 0; i < alg.n; ++i) {
      if (k[i] == 0) continue;
      for (std::size_t j = 0; j < i; ++j) e[alg.pair_index(j, i)] -= k[i] * l[j];
    }
  }

 private:
  void check_same(const AlgebraElement& o) const {
    if (!(algebra_ == o.algebra_))
      throw Error(ErrorKind::DescriptorMismatch, "operands belong to different algebras");
  }

  Algebra algebra_;
  Terms terms_;
};

inline bool is_zero(const AlgebraElement& x) { return x.is_zero(); }

/// Antilinear antihomomorphism with U_i* = U_i^-1.
inline AlgebraElement star(const AlgebraElement& x) {
  const Algebra& alg = x.algebra();
  AlgebraElement r(alg);
  for (const auto& [k, c] : x.terms()) {
    // (U_1^k1 ... U_n^kn)* = U_n^-kn ... U_1^-k1 = q^e U^-k with e_ji = -k_i k_j.
    PhaseScalar coeff = c.conj();
    if (!alg.commutative) {
      Exponents e(alg.pair_count(), 0);
      for (std::size_t i = 0; i < alg.n; ++i)
        for (std::size_t j = 0; j < i; ++j) e[alg.pair_index(j, i)] -= k[i] * k[j];
      coeff = coeff.shifted(e);
    }
    r.add_term(negated(k), coeff);
  }
  return r;
}

inline bool is_hermitian(const AlgebraElement& x) { return star(x) == x; }

/// Standard derivation d_a (0-based): d_a U_j = i delta_aj U_j.
inline AlgebraElement derive(std::size_t a, const AlgebraElement& x) {
  const Algebra& alg = x.algebra();
  if (a >= alg.n) throw Error(ErrorKind::IndexOutOfRange, "derivation index out of range");
  AlgebraElement r(alg);
  for (const auto& [k, c] : x.terms()) {
    if (k[a] == 0) continue;
    r.add_term(k, c.scaled(Complex(0, k[a])));
  }
  return r;
}

inline bool is_monomial(const AlgebraElement& x) {
  return x.terms().size() == 1 && x.terms().begin()->second.is_single_term();
}

/// Inverse of a single monomial c q^e U^k. Multi-term elements are rejected.
inline AlgebraElement invert(const AlgebraElement& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "zero is not invertible");
  if (!is_monomial(x))
    throw Error(ErrorKind::NotMonomial, "only single monomials can be inverted");
  const Algebra& alg = x.algebra();
  const auto& [k, c] = *x.terms().begin();
  AlgebraElement unit(alg);
  unit.add_term(k, PhaseScalar(Complex(1), Exponents(alg.pair_count(), 0)));
  // U^k is unitary, so (U^k)^-1 = (U^k)*.
  AlgebraElement r = star(unit);
  AlgebraElement coeff(alg);
  coeff.add_term(Exponents(alg.n, 0), c.inverse());
  return coeff * r;
}

inline AlgebraElement half(const AlgebraElement& x) { return Complex(Rational(1, 2)) * x; }

}  // namespace nclc
