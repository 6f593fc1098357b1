#pragma once

// Hermitian metrics on the free module of 1-forms with the dual basis.

#include <optional>
#include <string>

#include "nclc/forms.hpp"

namespace nclc {

/// Rank-3 array, indexed [a][i][j].
using Tensor3 = std::vector<Matrix>;

inline Tensor3 zero_tensor(const Algebra& alg, std::size_t n, std::size_t rows, std::size_t cols) {
  return Tensor3(n, zero_matrix(alg, rows, cols));
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
  const Algebra& alg = x.at(0).at(0).algebra();
  Matrix r = zero_matrix(alg, x.size(), y.at(0).size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (x[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < y[k].size(); ++j)
        if (!y[k][j].is_zero()) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

/// Conjugate transpose.
inline Matrix mat_adjoint(const Matrix& x) {
  const Algebra& alg = x.at(0).at(0).algebra();
  Matrix r = zero_matrix(alg, x.at(0).size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j) r[j][i] = star(x[i][j]);
  return r;
}

inline bool is_identity(const Matrix& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j) {
      if (i == j ? !(x[i][j] == AlgebraElement::one(x[i][j].algebra())) : !x[i][j].is_zero())
        return false;
    }
  return true;
}

inline bool is_zero(const Tensor3& t) {
  for (const auto& m : t)
    for (const auto& row : m)
      for (const auto& x : row)
        if (!x.is_zero()) return false;
  return true;
}

struct MetricViolation {
  ErrorKind kind;
  std::size_t i, j;  // 0-based
  std::string message;
};

namespace detail {

inline std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline void check_square(const Matrix& m, std::size_t n, const char* what) {
  if (m.size() != n) throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " must be N x N");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " must be N x N");
}

inline std::optional<MetricViolation> hermitian_violation(const Matrix& m, const char* what) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j)
      if (!(star(m[i][j]) == m[j][i]))
        return MetricViolation{ErrorKind::NotHermitian, i, j,
                               std::string(what) + " is not hermitian at " + pair_name(i, j)};
  return std::nullopt;
}

inline std::optional<MetricViolation> identity_violation(const Matrix& m, const char* what) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      bool ok = i == j ? m[i][j] == AlgebraElement::one(m[i][j].algebra()) : m[i][j].is_zero();
      if (!ok)
        return MetricViolation{ErrorKind::NotInverse, i, j,
                               std::string(what) + " differs from the identity at " + pair_name(i, j)};
    }
  return std::nullopt;
}

}  // namespace detail

/// First failing invariant of (upper, lower), or nullopt when both hold.
inline std::optional<MetricViolation> find_violation(const Matrix& upper, const Matrix& lower) {
  if (auto v = detail::hermitian_violation(upper, "upper metric")) return v;
  if (auto v = detail::hermitian_violation(lower, "lower metric")) return v;
  if (auto v = detail::identity_violation(mat_mul(upper, lower), "h^{ij} h_{jk}")) return v;
  if (auto v = detail::identity_violation(mat_mul(lower, upper), "h_{ij} h^{jk}")) return v;
  return std::nullopt;
}

/// Left inverse by Gauss-Jordan elimination with invertible-monomial pivots.
inline Matrix invert_metric(const Matrix& upper) {
  const std::size_t n = upper.size();
  if (n == 0) throw Error(ErrorKind::IndexOutOfRange, "empty metric");
  detail::check_square(upper, n, "upper metric");
  const Algebra alg = upper[0][0].algebra();
  Matrix a = upper;
  Matrix inv = identity_matrix(alg, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n && pivot == n; ++r)
      if (is_monomial(a[r][col])) {
        try {
          (void)invert(a[r][col]);
          pivot = r;
        } catch (const Error&) {
        }
      }
    if (pivot == n)
      throw Error(ErrorKind::NotInvertibleByElimination,
                  "no invertible monomial pivot in column " + std::to_string(col + 1) +
                      "; supply the inverse explicitly");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    AlgebraElement p = invert(a[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = p * a[col][j];
      inv[col][j] = p * inv[col][j];
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      AlgebraElement f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// h^{ij} together with its verified two-sided inverse h_{ij}.
class HermitianMetric {
 public:
  /// Validates both invariants; throws NotHermitian or NotInverse.
  HermitianMetric(Matrix upper, Matrix lower) : upper_(std::move(upper)), lower_(std::move(lower)) {
    if (upper_.empty()) throw Error(ErrorKind::IndexOutOfRange, "empty metric");
    detail::check_square(upper_, upper_.size(), "upper metric");
    detail::check_square(lower_, upper_.size(), "lower metric");
    alg_ = upper_[0][0].algebra();
    for (const Matrix* m : {&upper_, &lower_})
      for (const auto& row : *m)
        for (const auto& x : row)
          if (!(x.algebra() == alg_)) throw Error(ErrorKind::DescriptorMismatch, "metric entry");
    if (auto v = find_violation(upper_, lower_)) throw Error(v->kind, v->message);
  }

  /// Computes the inverse by elimination, then validates.
  static HermitianMetric from_upper(const Matrix& upper) {
    if (auto v = detail::hermitian_violation(upper, "upper metric")) throw Error(v->kind, v->message);
    return HermitianMetric(upper, invert_metric(upper));
  }

  static HermitianMetric identity(const Algebra& alg, std::size_t n) {
    return HermitianMetric(identity_matrix(alg, n), identity_matrix(alg, n));
  }

  const Algebra& algebra() const { return alg_; }
  std::size_t rank() const { return upper_.size(); }
  const Matrix& upper() const { return upper_; }
  const Matrix& lower() const { return lower_; }
  const AlgebraElement& up(std::size_t i, std::size_t j) const { return upper_[i][j]; }
  const AlgebraElement& low(std::size_t i, std::size_t j) const { return lower_[i][j]; }

 private:
  Algebra alg_;
  Matrix upper_, lower_;
};

inline void validate(const HermitianMetric& h) {
  if (auto v = find_violation(h.upper(), h.lower())) throw Error(v->kind, v->message);
}

inline void check_dual_basis(const LieAlgebra& g, const HermitianMetric& h) {
  if (h.rank() != g.dim() || !(h.algebra() == g.algebra()))
    throw Error(ErrorKind::DescriptorMismatch,
                "metric rank must equal the Lie algebra dimension over the same algebra");
}

/// theta_{ia} = theta_i(delta_a) = h_{ia}.
inline Matrix lowered_evaluation(const HermitianMetric& h) { return h.lower(); }

/// rho(a,b) = h_{ab} - h_{ab}^*.
inline KForm symmetry_form(const LieAlgebra& g, const HermitianMetric& h) {
  check_dual_basis(g, h);
  KForm rho = KForm::zero(g, 2);
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = a + 1; b < g.dim(); ++b) rho.set({a, b}, h.low(a, b) - star(h.low(a, b)));
  return rho;
}

/// d rho; the metric is weakly symmetric exactly when this vanishes.
inline KForm weak_symmetry_defect(const LieAlgebra& g, const HermitianMetric& h) {
  return exterior_derivative(g, symmetry_form(g, h));
}

inline bool is_weakly_symmetric(const LieAlgebra& g, const HermitianMetric& h) {
  return weak_symmetry_defect(g, h).is_zero();
}

}  // namespace nclc
