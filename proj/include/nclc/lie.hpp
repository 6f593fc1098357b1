#pragma once

// Finite-dimensional Lie algebra of hermitian derivations acting on the torus.
//
// Basis element a acts as delta_a = sum_b V[a][b] d_b, where d_b are the
// standard derivations. V defaults to the identity, giving the abelian
// algebra spanned by d_1..d_n.

#include <string>
#include <vector>

#include "nclc/algebra.hpp"

namespace nclc {

using Matrix = std::vector<std::vector<AlgebraElement>>;

inline Matrix zero_matrix(const Algebra& alg, std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<AlgebraElement>(cols, AlgebraElement::zero(alg)));
}

inline Matrix identity_matrix(const Algebra& alg, std::size_t n) {
  Matrix m = zero_matrix(alg, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = AlgebraElement::one(alg);
  return m;
}

class LieAlgebra {
 public:
  /// Structure constants indexed [e][a][b]: [delta_a, delta_b] = c^e_ab delta_e.
  using Constants = std::vector<std::vector<std::vector<Rational>>>;

  static LieAlgebra abelian(const Algebra& alg) {
    return LieAlgebra(alg, zero_constants(alg.n), identity_matrix(alg, alg.n));
  }

  LieAlgebra(const Algebra& alg, Constants c)
      : LieAlgebra(alg, std::move(c), identity_matrix(alg, alg.n)) {}

  /// Validates antisymmetry, Jacobi, hermiticity and derivation property of
  /// V, and that the bracket of the realized derivations matches c.
  LieAlgebra(const Algebra& alg, Constants c, Matrix realization)
      : alg_(alg), c_(std::move(c)), v_(std::move(realization)) {
    n_ = c_.size();
    validate_shape();
    validate_constants();
    validate_realization();
  }

  const Algebra& algebra() const { return alg_; }
  std::size_t dim() const { return n_; }
  const Rational& c(std::size_t e, std::size_t a, std::size_t b) const { return c_[e][a][b]; }
  const Constants& constants() const { return c_; }
  const Matrix& realization() const { return v_; }

  bool is_abelian() const {
    for (const auto& m : c_)
      for (const auto& row : m)
        for (const auto& x : row)
          if (x != 0) return false;
    return true;
  }

  AlgebraElement derive(std::size_t a, const AlgebraElement& x) const {
    if (a >= n_) throw Error(ErrorKind::IndexOutOfRange, "derivation index " + std::to_string(a + 1));
    AlgebraElement r = AlgebraElement::zero(alg_);
    for (std::size_t b = 0; b < alg_.n; ++b)
      if (!v_[a][b].is_zero()) r += v_[a][b] * nclc::derive(b, x);
    return r;
  }

  bool operator==(const LieAlgebra& o) const {
    return alg_ == o.alg_ && c_ == o.c_ && v_ == o.v_;
  }

 private:
  static Constants zero_constants(std::size_t n) {
    return Constants(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0)));
  }

  [[noreturn]] static void invalid(const std::string& msg) {
    throw Error(ErrorKind::InvalidLieAlgebra, msg);
  }

  void validate_shape() const {
    if (n_ == 0) invalid("dimension must be positive");
    for (const auto& m : c_) {
      if (m.size() != n_) invalid("structure constants are not n x n x n");
      for (const auto& row : m)
        if (row.size() != n_) invalid("structure constants are not n x n x n");
    }
    if (v_.size() != n_) invalid("realization must have one row per basis element");
    for (const auto& row : v_) {
      if (row.size() != alg_.n) invalid("realization row length must equal the number of generators");
      for (const auto& x : row)
        if (!(x.algebra() == alg_)) throw Error(ErrorKind::DescriptorMismatch, "realization entry");
    }
  }

  void validate_constants() const {
    for (std::size_t e = 0; e < n_; ++e)
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          if (c_[e][a][b] != -c_[e][b][a])
            invalid("structure constants not antisymmetric at c^" + std::to_string(e + 1) + "_" +
                    std::to_string(a + 1) + std::to_string(b + 1));
    // [[a,b],d] + [[b,d],a] + [[d,a],b] = 0
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t d = 0; d < n_; ++d)
          for (std::size_t f = 0; f < n_; ++f) {
            Rational s = 0;
            for (std::size_t e = 0; e < n_; ++e)
              s += c_[e][a][b] * c_[f][e][d] + c_[e][b][d] * c_[f][e][a] + c_[e][d][a] * c_[f][e][b];
            if (s != 0) invalid("Jacobi identity fails");
          }
  }

  void validate_realization() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < alg_.n; ++b) {
        const AlgebraElement& x = v_[a][b];
        if (!is_hermitian(x)) invalid("realization entry V[" + std::to_string(a + 1) + "][" +
                                      std::to_string(b + 1) + "] is not hermitian");
        if (!alg_.commutative) {
          for (const auto& [k, coeff] : x.terms())
            for (int e : k)
              if (e != 0)
                invalid("realization entries must be central (scalars) on a noncommutative torus");
        }
      }
    // [delta_a, delta_b] = sum_d (delta_a(V_bd) - delta_b(V_ad)) d_d
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t d = 0; d < alg_.n; ++d) {
          AlgebraElement lhs = derive(a, v_[b][d]) - derive(b, v_[a][d]);
          AlgebraElement rhs = AlgebraElement::zero(alg_);
          for (std::size_t e = 0; e < n_; ++e)
            if (c_[e][a][b] != 0) rhs += Complex(c_[e][a][b]) * v_[e][d];
          if (!(lhs == rhs))
            invalid("realized derivations do not satisfy the declared brackets");
        }
  }

  Algebra alg_;
  std::size_t n_ = 0;
  Constants c_;
  Matrix v_;
};

}  // namespace nclc
