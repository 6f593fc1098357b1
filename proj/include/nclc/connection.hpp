#pragma once

// Connections on the free module of 1-forms, stored as Christoffel arrays.
//
// gamma[a][i][j] is Gamma^i_{aj}: nabla_{delta_a} theta^i = Gamma^i_{aj} theta^j.
// The component-array operators (sigma, wedge_op, sym_op, T_h) act on arrays
// with the same layout, alpha[a][i][b] = alpha^i_{ab}.

#include <optional>

#include "nclc/metric.hpp"

namespace nclc {

class Connection {
 public:
  Connection() = default;
  explicit Connection(Tensor3 gamma) : gamma_(std::move(gamma)) {
    if (gamma_.empty()) throw Error(ErrorKind::IndexOutOfRange, "connection needs at least one derivation");
    for (const auto& m : gamma_) detail::check_square(m, gamma_[0].size(), "Christoffel slice");
  }

  static Connection zero(const LieAlgebra& g) {
    return Connection(zero_tensor(g.algebra(), g.dim(), g.dim(), g.dim()));
  }

  const Tensor3& gamma() const { return gamma_; }
  Tensor3& gamma() { return gamma_; }
  /// Gamma^i_{aj}
  const AlgebraElement& operator()(std::size_t i, std::size_t a, std::size_t j) const {
    return gamma_[a][i][j];
  }
  AlgebraElement& operator()(std::size_t i, std::size_t a, std::size_t j) { return gamma_[a][i][j]; }

  std::size_t dim() const { return gamma_.size(); }
  std::size_t rank() const { return gamma_.empty() ? 0 : gamma_[0].size(); }

  friend bool operator==(const Connection&, const Connection&) = default;

 private:
  Tensor3 gamma_;
};

namespace detail {

inline void check_connection(const LieAlgebra& g, const Connection& c) {
  if (c.dim() != g.dim() || c.rank() != g.dim())
    throw Error(ErrorKind::DescriptorMismatch, "connection shape does not match the Lie algebra");
  for (const auto& m : c.gamma())
    for (const auto& row : m)
      for (const auto& x : row)
        if (!(x.algebra() == g.algebra())) throw Error(ErrorKind::DescriptorMismatch, "Christoffel entry");
}

}  // namespace detail

/// Coefficients of nabla_{delta_a}(f_i theta^i) in the theta basis.
inline std::vector<AlgebraElement> apply(const LieAlgebra& g, const Connection& c, std::size_t a,
                                         const std::vector<AlgebraElement>& f) {
  detail::check_connection(g, c);
  if (a >= g.dim()) throw Error(ErrorKind::IndexOutOfRange, "derivation index " + std::to_string(a + 1));
  if (f.size() != c.rank()) throw Error(ErrorKind::IndexOutOfRange, "expected one coefficient per basis 1-form");
  std::vector<AlgebraElement> r;
  for (std::size_t j = 0; j < c.rank(); ++j) {
    AlgebraElement v = g.derive(a, f[j]);
    for (std::size_t i = 0; i < c.rank(); ++i)
      if (!f[i].is_zero()) v += f[i] * c(i, a, j);
    r.push_back(std::move(v));
  }
  return r;
}

/// T^i as a 2-form: T^i(a,b) = Gamma^i_{ab} - Gamma^i_{ba} + c^i_{ab}.
inline std::vector<KForm> torsion(const LieAlgebra& g, const Connection& c) {
  detail::check_connection(g, c);
  const std::size_t n = g.dim();
  std::vector<KForm> t;
  for (std::size_t i = 0; i < n; ++i) {
    KForm ti = KForm::zero(g, 2);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        ti.set({a, b}, c(i, a, b) - c(i, b, a) + AlgebraElement::scalar(g.algebra(), Complex(g.c(i, a, b))));
    t.push_back(std::move(ti));
  }
  return t;
}

inline bool is_torsion_free(const LieAlgebra& g, const Connection& c) {
  for (const KForm& t : torsion(g, c))
    if (!t.is_zero()) return false;
  return true;
}

/// T_h(alpha)^{ij}_a = alpha^i_{ak} h^{kj} + (alpha^j_{ak} h^{ki})^*.
inline Tensor3 t_h(const Tensor3& alpha, const HermitianMetric& h) {
  const std::size_t n = alpha.size(), N = h.rank();
  Tensor3 r = zero_tensor(h.algebra(), n, N, N);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix ah = mat_mul(alpha[a], h.upper());
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r[a][i][j] = ah[i][j] + star(ah[j][i]);
  }
  return r;
}

/// C^{ij}_a = delta_a h^{ij} - T_h(Gamma)^{ij}_a; zero exactly when compatible.
inline Tensor3 compat_defect(const LieAlgebra& g, const Connection& c, const HermitianMetric& h) {
  detail::check_connection(g, c);
  check_dual_basis(g, h);
  Tensor3 r = t_h(c.gamma(), h);
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t i = 0; i < h.rank(); ++i)
      for (std::size_t j = 0; j < h.rank(); ++j) r[a][i][j] = g.derive(a, h.up(i, j)) - r[a][i][j];
  return r;
}

inline bool is_compatible(const LieAlgebra& g, const Connection& c, const HermitianMetric& h) {
  return is_zero(compat_defect(g, c, h));
}

/// Gamma^i_{ak} = delta_a(h^{ij} h_{jk}), which vanishes for an exact inverse.
inline Connection grassmann(const LieAlgebra& g, const HermitianMetric& h) {
  check_dual_basis(g, h);
  Matrix p = mat_mul(h.upper(), h.lower());
  Tensor3 gamma = zero_tensor(g.algebra(), g.dim(), h.rank(), h.rank());
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t i = 0; i < h.rank(); ++i)
      for (std::size_t k = 0; k < h.rank(); ++k) gamma[a][i][k] = g.derive(a, p[i][k]);
  return Connection(std::move(gamma));
}

/// Throws AntihermitianViolation unless (A^{ij}_a)^* = -A^{ji}_a.
inline void check_antihermitian(const Tensor3& A, std::size_t n, std::size_t N) {
  if (A.size() != n) throw Error(ErrorKind::AntihermitianViolation, "A must have one slice per derivation");
  for (std::size_t a = 0; a < n; ++a) {
    detail::check_square(A[a], N, "A slice");
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        if (!(star(A[a][i][j]) == -A[a][j][i]))
          throw Error(ErrorKind::AntihermitianViolation,
                      "A_" + std::to_string(a + 1) + " is not antihermitian at " + detail::pair_name(i, j));
  }
}

/// Gamma^i_{ak} = (1/2 delta_a h^{ij} + A^{ij}_a) h_{jk}.
inline Connection compatible_connection(const LieAlgebra& g, const HermitianMetric& h,
                                        const std::optional<Tensor3>& A = std::nullopt) {
  check_dual_basis(g, h);
  const std::size_t n = g.dim(), N = h.rank();
  if (A) check_antihermitian(*A, n, N);
  Tensor3 gamma(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix m = zero_matrix(g.algebra(), N, N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        m[i][j] = half(g.derive(a, h.up(i, j)));
        if (A) m[i][j] += (*A)[a][i][j];
      }
    gamma[a] = mat_mul(m, h.lower());
  }
  return Connection(std::move(gamma));
}

/// sigma(alpha)^i_{ab} = alpha^i_{ba}
inline Tensor3 sigma(const Tensor3& alpha) {
  Tensor3 r = alpha;
  for (std::size_t a = 0; a < alpha.size(); ++a)
    for (std::size_t i = 0; i < alpha[a].size(); ++i)
      for (std::size_t b = 0; b < alpha.size(); ++b) r[a][i][b] = alpha[b][i][a];
  return r;
}

inline Tensor3 add(Tensor3 x, const Tensor3& y, int sign = 1) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t i = 0; i < x[a].size(); ++i)
      for (std::size_t j = 0; j < x[a][i].size(); ++j) {
        if (sign > 0) x[a][i][j] += y[a][i][j];
        else x[a][i][j] -= y[a][i][j];
      }
  return x;
}

inline Tensor3 scale(Tensor3 x, const Complex& s) {
  for (auto& m : x)
    for (auto& row : m)
      for (auto& v : row) v = s * v;
  return x;
}

/// alpha - sigma(alpha)
inline Tensor3 wedge_op(const Tensor3& alpha) { return add(alpha, sigma(alpha), -1); }

/// alpha + sigma(alpha)
inline Tensor3 sym_op(const Tensor3& alpha) { return add(alpha, sigma(alpha)); }

/// The exterior derivative on the basis, d^i_{ab} = d theta^i(a,b) = -c^i_{ab}.
inline Tensor3 d_array(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  Tensor3 r = zero_tensor(g.algebra(), n, n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t b = 0; b < n; ++b)
        r[a][i][b] = AlgebraElement::scalar(g.algebra(), Complex(-g.c(i, a, b)));
  return r;
}

/// Gamma^i_{ab} = 1/2(-c^i_{ab} + Gamma0^i_{ab} + Gamma0^i_{ba}) + beta^i_{ab}, beta symmetric in (a,b).
inline Connection torsion_free_from(const LieAlgebra& g, const Connection& base,
                                    const std::optional<Tensor3>& beta = std::nullopt) {
  detail::check_connection(g, base);
  Tensor3 gamma = scale(add(d_array(g), sym_op(base.gamma())), Complex(Rational(1, 2)));
  if (beta) {
    if (beta->size() != g.dim()) throw Error(ErrorKind::NotSymmetric, "beta must have one slice per derivation");
    for (const auto& m : *beta) detail::check_square(m, g.dim(), "beta slice");
    if (!(sigma(*beta) == *beta)) throw Error(ErrorKind::NotSymmetric, "beta is not symmetric in its form indices");
    gamma = add(gamma, *beta);
  }
  return Connection(std::move(gamma));
}

struct Characterization {
  bool identity = false;     // (T_h o s)(nabla) = 2dh - T_h(d)
  bool fixed_point = false;  // 1/2 (d + s(nabla)) = nabla
  bool holds() const { return identity && fixed_point; }
};

inline Characterization lc_characterization(const LieAlgebra& g, const Connection& c,
                                            const HermitianMetric& h) {
  detail::check_connection(g, c);
  check_dual_basis(g, h);
  const Tensor3 d = d_array(g);
  Tensor3 dh = zero_tensor(g.algebra(), g.dim(), h.rank(), h.rank());
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t i = 0; i < h.rank(); ++i)
      for (std::size_t j = 0; j < h.rank(); ++j) dh[a][i][j] = Complex(2) * g.derive(a, h.up(i, j));
  Characterization r;
  r.identity = t_h(sym_op(c.gamma()), h) == add(dh, t_h(d, h), -1);
  r.fixed_point = scale(add(d, sym_op(c.gamma())), Complex(Rational(1, 2))) == c.gamma();
  return r;
}

inline bool lc_characterization_check(const LieAlgebra& g, const Connection& c, const HermitianMetric& h) {
  return lc_characterization(g, c, h).holds();
}

}  // namespace nclc
