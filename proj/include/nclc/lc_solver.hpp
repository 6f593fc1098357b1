#pragma once

// Levi-Civita connections for a weakly symmetric metric.
//
// Pipeline: F tensor -> solvability check -> hermitian R_a -> U_a -> Gamma,
// followed by an unconditional re-verification of the result.

#include <array>
#include <map>

#include "nclc/connection.hpp"

namespace nclc {

/// F[c][a][b] = F_{cab}, antisymmetric in (a,b).
using FTensor = Tensor3;
/// R[a] is the hermitian matrix R_a.
using RSet = std::vector<Matrix>;
using Triple = std::array<std::size_t, 3>;

/// F_{cab} = i/2 h_{ci} (d_a h^{ij}) h_{jb} - i/2 h_{ci} (d_b h^{ij}) h_{ja} + i h_{ci} c^i_{ab}.
inline FTensor compute_F(const LieAlgebra& g, const HermitianMetric& h) {
  check_dual_basis(g, h);
  const std::size_t n = g.dim();
  const Algebra& alg = g.algebra();
  const Complex half_i(0, Rational(1, 2));
  // M[a] = h_lower (d_a h_upper) h_lower
  std::vector<Matrix> m;
  for (std::size_t a = 0; a < n; ++a) {
    Matrix dh = zero_matrix(alg, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dh[i][j] = g.derive(a, h.up(i, j));
    m.push_back(mat_mul(mat_mul(h.lower(), dh), h.lower()));
  }
  FTensor F = zero_tensor(alg, n, n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        AlgebraElement v = half_i * (m[a][c][b] - m[b][c][a]);
        for (std::size_t i = 0; i < n; ++i)
          if (g.c(i, a, b) != 0) v += Complex(0, g.c(i, a, b)) * h.low(c, i);
        F[c][a][b] = std::move(v);
      }
  return F;
}

struct SolvabilityViolation {
  Triple triple;           // 0-based, strictly increasing
  AlgebraElement defect;   // S + S^*, S = F_abc + F_bca + F_cab
};

inline std::optional<SolvabilityViolation> solvability_check(const FTensor& F) {
  const std::size_t n = F.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        AlgebraElement s = F[a][b][c] + F[b][c][a] + F[c][a][b];
        AlgebraElement defect = s + star(s);
        if (!defect.is_zero()) return SolvabilityViolation{{a, b, c}, defect};
      }
  return std::nullopt;
}

inline std::string triple_name(const Triple& t) {
  return "(" + std::to_string(t[0] + 1) + "," + std::to_string(t[1] + 1) + "," + std::to_string(t[2] + 1) + ")";
}

/// Free parameters of the solution: X_{ab} = (R_a)_{bb}, one H per triple a<b<c,
/// and the antihermitian compatibility freedom A.
struct SolverParams {
  Matrix X;
  std::map<Triple, AlgebraElement> H;
  std::optional<Tensor3> A;

  static SolverParams zero(const Algebra& alg, std::size_t n) {
    return SolverParams{zero_matrix(alg, n, n), {}, std::nullopt};
  }

  void validate(std::size_t n) const {
    if (X.size() != n) throw Error(ErrorKind::ParamViolation, "X must be n x n");
    for (std::size_t a = 0; a < n; ++a) {
      if (X[a].size() != n) throw Error(ErrorKind::ParamViolation, "X must be n x n");
      for (std::size_t b = 0; b < n; ++b)
        if (!is_hermitian(X[a][b]))
          throw Error(ErrorKind::ParamViolation, "X" + detail::pair_name(a, b) + " is not hermitian");
    }
    for (const auto& [t, v] : H) {
      if (!(t[0] < t[1] && t[1] < t[2] && t[2] < n))
        throw Error(ErrorKind::ParamViolation, "H index " + triple_name(t) + " is not a strictly increasing triple");
      if (!is_hermitian(v)) throw Error(ErrorKind::ParamViolation, "H" + triple_name(t) + " is not hermitian");
    }
    if (A) check_antihermitian(*A, n, n);
  }
};

/// Hermitian R_a with (R_a)_{cb} - (R_b)_{ca} = F_{cab}.
inline RSet solve_R(const FTensor& F, const SolverParams& p) {
  const std::size_t n = F.size();
  if (n == 0) return {};
  const Algebra alg = F[0][0][0].algebra();
  p.validate(n);
  if (auto v = solvability_check(F))
    throw Error(ErrorKind::SolvabilityViolated, "cyclic condition fails at " + triple_name(v->triple));
  RSet R(n, zero_matrix(alg, n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) R[a][b][b] = p.X[a][b];
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      R[a][a][b] = p.X[b][a] + F[a][a][b];
      R[a][b][a] = star(R[a][a][b]);
    }
  const Complex half(Rational(1, 2));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        auto it = p.H.find({a, b, c});
        AlgebraElement hh = it == p.H.end() ? AlgebraElement::zero(alg) : it->second;
        const AlgebraElement& fabc = F[a][b][c];
        const AlgebraElement& fbca = F[b][c][a];
        const AlgebraElement& fcab = F[c][a][b];
        R[a][b][c] = half * (fabc - fbca + star(fcab)) + hh;
        R[b][c][a] = half * (star(fabc) - star(fbca) - fcab) + hh;
        R[c][a][b] = -(half * (fabc + fbca + star(fcab))) + hh;
        R[a][c][b] = star(R[a][b][c]);
        R[b][a][c] = star(R[b][c][a]);
        R[c][b][a] = star(R[c][a][b]);
      }
  return R;
}

/// U^{ij}_a = h^{ib} (R_a)_{bc} h^{cj}.
inline Tensor3 assemble_U(const HermitianMetric& h, const RSet& R) {
  Tensor3 U;
  for (const Matrix& r : R) U.push_back(mat_mul(mat_mul(h.upper(), r), h.upper()));
  return U;
}

struct VerificationReport {
  std::vector<KForm> torsion;  // T^i per module index
  Tensor3 compat;              // C^{ij}_a, [a][i][j]
  bool torsion_free = false;
  bool compatible = false;
  Characterization characterization;
  bool passed() const { return torsion_free && compatible && characterization.holds(); }
};

inline VerificationReport verify_levi_civita(const LieAlgebra& g, const Connection& c, const HermitianMetric& h) {
  VerificationReport r;
  r.torsion = torsion(g, c);
  r.torsion_free = true;
  for (const KForm& t : r.torsion) r.torsion_free = r.torsion_free && t.is_zero();
  r.compat = compat_defect(g, c, h);
  r.compatible = is_zero(r.compat);
  r.characterization = lc_characterization(g, c, h);
  return r;
}

struct LeviCivita {
  FTensor F;  // solver input, including the A correction when A is given
  RSet R;
  Tensor3 U;
  Connection connection;
  VerificationReport verification;
};

namespace detail {

// F_{cab} += i (h A_a h)_{cb} - i (h A_b h)_{ca}: the A-part of Gamma, written in R form.
inline void fold_antihermitian(FTensor& F, const HermitianMetric& h, const Tensor3& A) {
  const std::size_t n = F.size();
  std::vector<Matrix> b;
  for (const Matrix& a : A) b.push_back(mat_mul(mat_mul(h.lower(), a), h.lower()));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t bb = 0; bb < n; ++bb)
        F[c][a][bb] += Complex::i() * (b[a][c][bb] - b[bb][c][a]);
}

}  // namespace detail

inline std::string first_component(const KForm& w) {
  const auto& [idx, v] = *w.components().begin();
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
  return s + ")";
}

/// Full pipeline. Throws NotWeaklySymmetric, SolvabilityViolated, ParamViolation,
/// AntihermitianViolation, or InternalVerificationFailure.
inline LeviCivita solve_levi_civita(const LieAlgebra& g, const HermitianMetric& h, const SolverParams& p) {
  check_dual_basis(g, h);
  const std::size_t n = g.dim();
  p.validate(n);
  KForm drho = weak_symmetry_defect(g, h);
  if (!drho.is_zero())
    throw Error(ErrorKind::NotWeaklySymmetric, "d rho is nonzero at " + first_component(drho));
  LeviCivita r;
  r.F = compute_F(g, h);
  if (p.A) detail::fold_antihermitian(r.F, h, *p.A);
  r.R = solve_R(r.F, p);
  r.U = assemble_U(h, r.R);
  Tensor3 gamma(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix m = zero_matrix(g.algebra(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = half(g.derive(a, h.up(i, j))) + Complex::i() * r.U[a][i][j];
        if (p.A) m[i][j] += (*p.A)[a][i][j];
      }
    gamma[a] = mat_mul(m, h.lower());
  }
  r.connection = Connection(std::move(gamma));
  r.verification = verify_levi_civita(g, r.connection, h);
  if (!r.verification.passed()) {
    std::string what;
    if (!r.verification.torsion_free) what += " torsion";
    if (!r.verification.compatible) what += " compatibility";
    if (!r.verification.characterization.identity) what += " characterization";
    if (!r.verification.characterization.fixed_point) what += " fixed-point";
    throw Error(ErrorKind::InternalVerificationFailure, "constructed connection fails:" + what);
  }
  return r;
}

inline Connection build_levi_civita(const LieAlgebra& g, const HermitianMetric& h, const SolverParams& p) {
  return solve_levi_civita(g, h, p).connection;
}

inline Connection build_levi_civita(const LieAlgebra& g, const HermitianMetric& h) {
  return build_levi_civita(g, h, SolverParams::zero(g.algebra(), g.dim()));
}

}  // namespace nclc
