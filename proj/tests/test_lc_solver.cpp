#include <gtest/gtest.h>

#include <functional>

#include "block_example.hpp"
#include "classical_oracle.hpp"

namespace nclc {
namespace {

const Algebra T3{3};
const LieAlgebra G3 = LieAlgebra::abelian(T3);

AlgebraElement P(const char* s, const Algebra& alg = T3) { return parse_element(s, alg); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ConfigError;
}

SolverParams x11_params(const AlgebraElement& x11) {
  SolverParams p = SolverParams::zero(x11.algebra(), 3);
  p.X[0][0] = x11;
  return p;
}

// Every R_a hermitian and (R_a)_{cb} - (R_b)_{ca} = F_{cab} for all a, b, c.
::testing::AssertionResult solves(const RSet& R, const FTensor& F) {
  const std::size_t n = F.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (!(star(R[a][b][c]) == R[a][c][b]))
          return ::testing::AssertionFailure() << "R_" << a + 1 << " not hermitian at " << b + 1 << c + 1;
        if (!(R[a][c][b] - R[b][c][a] == F[c][a][b]))
          return ::testing::AssertionFailure() << "equation fails at c,a,b=" << c + 1 << a + 1 << b + 1;
      }
    }
  return ::testing::AssertionSuccess();
}

TEST(ComputeF, IdentityAndBlockMetric) {
  EXPECT_TRUE(is_zero(compute_F(G3, HermitianMetric::identity(T3, 3))));
  AlgebraElement h0 = P("U1*U2");
  FTensor F = compute_F(G3, testing::block_metric(h0));
  EXPECT_EQ(F[2][0][1], Complex(0, Rational(-1, 2)) * derive(0, invert(h0)));
}

TEST(ComputeF, AbelianSimplificationAndAntisymmetry) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMetric h = testing::general_congruence_metric(gen, T3, 3);
    FTensor F = compute_F(G3, h);
    const Complex half_i(0, Rational(1, 2));
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
          EXPECT_EQ(F[c][a][b], -F[c][b][a]);
          EXPECT_EQ(F[c][a][b], half_i * (derive(b, h.low(c, a)) - derive(a, h.low(c, b))));
        }
  }
}

TEST(ComputeF, CyclicDefectIsIDRho) {
  testing::Gen gen(22);
  std::vector<LieAlgebra> algebras = {G3, LieAlgebra::abelian(Algebra(4)), testing::euclidean2()};
  for (const LieAlgebra& g : algebras)
    for (int trial = 0; trial < 10; ++trial) {
      HermitianMetric h = testing::general_congruence_metric(gen, g.algebra(), g.dim());
      FTensor F = compute_F(g, h);
      KForm drho = weak_symmetry_defect(g, h);
      for_each_increasing(g.dim(), 3, [&](const Indices& t) {
        std::size_t a = t[0], b = t[1], c = t[2];
        AlgebraElement s = F[a][b][c] + F[b][c][a] + F[c][a][b];
        EXPECT_EQ(s + star(s), Complex::i() * drho({a, b, c}));
      });
    }
}

TEST(Solvability, BlockMetrics) {
  EXPECT_FALSE(solvability_check(compute_F(G3, HermitianMetric::identity(T3, 3))).has_value());
  EXPECT_FALSE(solvability_check(compute_F(G3, testing::block_metric(P("U2")))).has_value());
  auto v = solvability_check(compute_F(G3, testing::block_metric(P("U1"))));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->triple, (Triple{0, 1, 2}));
  EXPECT_EQ(kind_of([&] { solve_R(compute_F(G3, testing::block_metric(P("U1"))), SolverParams::zero(T3, 3)); }),
            ErrorKind::SolvabilityViolated);
}

TEST(SolveR, ZeroAndParamChecks) {
  FTensor F = zero_tensor(T3, 3, 3, 3);
  RSet R = solve_R(F, SolverParams::zero(T3, 3));
  for (const Matrix& r : R)
    for (const auto& row : r)
      for (const auto& x : row) EXPECT_TRUE(x.is_zero());
  SolverParams bad = SolverParams::zero(T3, 3);
  bad.X[0][0] = P("i");
  EXPECT_EQ(kind_of([&] { solve_R(F, bad); }), ErrorKind::ParamViolation);
  SolverParams bad_h = SolverParams::zero(T3, 3);
  bad_h.H[{0, 1, 2}] = P("U1");
  EXPECT_EQ(kind_of([&] { solve_R(F, bad_h); }), ErrorKind::ParamViolation);
  SolverParams bad_t = SolverParams::zero(T3, 3);
  bad_t.H[{1, 0, 2}] = P("1");
  EXPECT_EQ(kind_of([&] { solve_R(F, bad_t); }), ErrorKind::ParamViolation);
}

TEST(SolveR, BlockMetricMatchesClosedForms) {
  testing::Gen gen(23);
  for (const char* h0s : {"U2", "U2*U3", "2*i*q[2,3]*U2^-1*U3^2", "U3^-1"}) {
    AlgebraElement h0 = P(h0s);
    HermitianMetric h = testing::block_metric(h0);
    AlgebraElement x11 = P("U1 + U1^-1 + 2");
    LeviCivita lc = solve_levi_civita(G3, h, x11_params(x11));
    EXPECT_EQ(lc.R, testing::block_R(h0, x11)) << h0s;
    EXPECT_EQ(lc.U, testing::block_U(h0, x11)) << h0s;
    // General solution with arbitrary hermitian X and H.
    for (int trial = 0; trial < 5; ++trial) {
      SolverParams p = SolverParams::zero(T3, 3);
      for (auto& row : p.X)
        for (auto& x : row) x = gen.hermitian(T3);
      p.H[{0, 1, 2}] = gen.hermitian(T3);
      RSet R = solve_R(compute_F(G3, h), p);
      EXPECT_EQ(R, testing::general_R(h, p.X, p.H[{0, 1, 2}])) << h0s;
    }
  }
}

TEST(SolveR, RoundTripFromRandomHermitianSets) {
  testing::Gen gen(24);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(2, 4));
    const Algebra alg(n);
    RSet Rt(n, zero_matrix(alg, n, n));
    for (auto& r : Rt)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = b; c < n; ++c) {
          AlgebraElement x = gen.element(alg, 2);
          r[b][c] = b == c ? x + star(x) : x;
          r[c][b] = star(r[b][c]);
        }
    FTensor F = zero_tensor(alg, n, n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) F[c][a][b] = Rt[a][c][b] - Rt[b][c][a];
    SolverParams p = SolverParams::zero(alg, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) p.X[a][b] = Rt[a][b][b];
    RSet R = solve_R(F, p);
    EXPECT_TRUE(solves(R, F));
    SolverParams q = SolverParams::zero(alg, n);
    EXPECT_TRUE(solves(solve_R(F, q), F));
  }
}

TEST(AssembleU, HermitianPairs) {
  testing::Gen gen(25);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMetric h = testing::general_congruence_metric(gen, T3, 3);
    RSet R(3, zero_matrix(T3, 3, 3));
    for (auto& r : R)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t c = b; c < 3; ++c) {
          AlgebraElement x = gen.element(T3, 2);
          r[b][c] = b == c ? x + star(x) : x;
          r[c][b] = star(r[b][c]);
        }
    Tensor3 U = assemble_U(h, R);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(star(U[a][i][j]), U[a][j][i]);
    // (R_a)_{bc} = h_{bi} U^{ij}_a h_{jc}
    for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(mat_mul(mat_mul(h.lower(), U[a]), h.lower()), R[a]);
  }
  EXPECT_TRUE(is_zero(assemble_U(HermitianMetric::identity(T3, 3), RSet(3, zero_matrix(T3, 3, 3)))));
}

TEST(Build, BlockMetricWithU2) {
  for (const char* x : {"0", "1", "U1 + U1^-1", "q[1,2] + q[2,1]"}) {
    AlgebraElement x11 = P(x);
    Connection c = build_levi_civita(G3, testing::block_metric(P("U2")), x11_params(x11));
    Tensor3 expected = zero_tensor(T3, 3, 3, 3);
    expected[0][0][0] = Complex::i() * x11;
    expected[1][1][1] = P("i");
    EXPECT_EQ(c.gamma(), expected) << x;
  }
  EXPECT_EQ(build_levi_civita(G3, HermitianMetric::identity(T3, 3)), Connection::zero(G3));
}

TEST(Build, BlockMetricMatchesClosedFormConnection) {
  for (const char* h0s : {"U2", "U2^3", "U2*U3", "2*i*q[2,3]*U2^-1*U3^2", "U3^-1"}) {
    AlgebraElement h0 = P(h0s);
    AlgebraElement x11 = P("U1 + U1^-1");
    Connection c = build_levi_civita(G3, testing::block_metric(h0), x11_params(x11));
    Tensor3 shown = testing::block_connection(h0, x11);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
          EXPECT_EQ(c(i, a, k), shown[a][i][k]) << h0s << " a,i,k=" << a + 1 << i + 1 << k + 1;
  }
}

TEST(Build, RejectsNonWeaklySymmetric) {
  EXPECT_EQ(kind_of([&] { build_levi_civita(G3, testing::block_metric(P("U1"))); }),
            ErrorKind::NotWeaklySymmetric);
  try {
    build_levi_civita(G3, testing::block_metric(P("U1")));
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(1,2,3)"), std::string::npos);
  }
}

TEST(Build, NonUniqueness) {
  HermitianMetric h = testing::block_metric(P("U2"));
  Connection c0 = build_levi_civita(G3, h, x11_params(P("0")));
  Connection c1 = build_levi_civita(G3, h, x11_params(P("1")));
  EXPECT_NE(c0, c1);
  EXPECT_NE(c0(0, 0, 0), c1(0, 0, 0));
  EXPECT_TRUE(verify_levi_civita(G3, c0, h).passed());
  EXPECT_TRUE(verify_levi_civita(G3, c1, h).passed());
}

TEST(Verify, FlatConnectionOnBlockMetricFails) {
  HermitianMetric h = testing::block_metric(P("U2"));
  VerificationReport r = verify_levi_civita(G3, Connection::zero(G3), h);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.torsion_free);
  EXPECT_FALSE(r.compatible);
  EXPECT_EQ(r.compat[1][1][2], P("i*U2"));
  EXPECT_TRUE(verify_levi_civita(G3, Connection::zero(G3), HermitianMetric::identity(T3, 3)).passed());
}

TEST(Build, RandomWeaklySymmetricMetricsWithAllParameters) {
  testing::Gen gen(26);
  for (int trial = 0; trial < 24; ++trial) {
    // Odd trials: block metrics with a random h0 free of U1, plus A.
    // Even trials: commuting congruence metrics on T3 and T4, X and H only.
    const bool block = trial % 2 == 1;
    const std::size_t n = block ? 3 : 3 + static_cast<std::size_t>(trial % 4 / 2);
    const Algebra alg(n);
    const LieAlgebra g = LieAlgebra::abelian(alg);
    HermitianMetric h = HermitianMetric::identity(alg, n);
    if (block) {
      AlgebraElement h0 = gen.nonzero_complex() * AlgebraElement::generator(alg, 1, gen.uniform(-2, 2)) *
                          AlgebraElement::generator(alg, 2, gen.uniform(-2, 2)) *
                          AlgebraElement::phase(alg, 1, 2, gen.uniform(-1, 1));
      h = testing::block_metric(h0);
    } else {
      h = testing::commuting_congruence_metric(gen, alg, n, static_cast<std::size_t>(trial) % n);
    }
    SolverParams p = SolverParams::zero(alg, n);
    for (auto& row : p.X)
      for (auto& x : row)
        if (gen.coin()) x = gen.hermitian(alg, 1);
    for_each_increasing(n, 3, [&](const Indices& t) {
      if (gen.coin()) p.H[{t[0], t[1], t[2]}] = gen.hermitian(alg, 1);
    });
    if (block) p.A = testing::random_antihermitian(gen, alg, n, 1);
    LeviCivita lc = solve_levi_civita(g, h, p);
    EXPECT_TRUE(lc.verification.passed());
    EXPECT_TRUE(solves(lc.R, lc.F));
  }
}

TEST(Build, NonabelianRealization) {
  testing::Gen gen(27);
  const LieAlgebra g = testing::euclidean2();
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMetric h = testing::commuting_congruence_metric(gen, g.algebra(), 3, 0);
    SolverParams p = SolverParams::zero(g.algebra(), 3);
    p.X[1][2] = gen.hermitian(g.algebra(), 1);
    p.H[{0, 1, 2}] = gen.hermitian(g.algebra(), 1);
    if (trial % 2) p.A = testing::random_antihermitian(gen, g.algebra(), 3, 1);
    LeviCivita lc = solve_levi_civita(g, h, p);
    EXPECT_TRUE(lc.verification.passed());
  }
  // Flat metric on a nonabelian algebra still has a nonzero connection.
  Connection c = build_levi_civita(g, HermitianMetric::identity(g.algebra(), 3));
  EXPECT_NE(c, Connection::zero(g));
}

AlgebraElement to_element(const Algebra& alg, const classical::Poly& p) {
  AlgebraElement r(alg);
  for (const auto& [k, c] : p.terms) r.add_term(k, PhaseScalar(Complex(c.re, c.im), Exponents(alg.pair_count(), 0)));
  return r;
}

classical::Poly real_poly(testing::Gen& gen, std::size_t n) {
  classical::Poly p(n);
  int terms = gen.uniform(1, 2);
  for (int t = 0; t < terms; ++t) {
    // Small supports keep the n = 4 inverse metric tractable.
    classical::Poly::Key k(n);
    if (n < 4) {
      for (int& e : k) e = gen.uniform(-1, 1);
    } else {
      k[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(n) - 1))] = gen.uniform(-1, 1);
    }
    Rational re = gen.rational(), im = gen.rational();
    p.add(k, {re, im});
    classical::Poly::Key nk(n);
    for (std::size_t i = 0; i < n; ++i) nk[i] = -k[i];
    p.add(nk, {re, -im});
  }
  return p;
}

TEST(Classical, ParamsZeroConnectionIsMinusChristoffel) {
  testing::Gen gen(28);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const Algebra alg(n, true);
    const LieAlgebra g = LieAlgebra::abelian(alg);
    classical::Mat L = classical::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) L[i][j] = real_poly(gen, n);
    std::vector<Rational> D = testing::random_diagonal(gen, n);
    classical::Metric m = classical::from_factors(L, D);
    std::vector<classical::Mat> oracle = classical::connection_on_coframe(m);

    Matrix Pm = identity_matrix(alg, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) Pm[i][j] = to_element(alg, L[i][j]);
    HermitianMetric h = testing::congruence_metric(Pm, D);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(h.low(i, j), to_element(alg, m.g_low[i][j]));

    Connection c = build_levi_civita(g, h);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < n; ++b) EXPECT_EQ(c(i, a, b), to_element(alg, oracle[a][i][b]));
  }
}

TEST(Classical, ConstantDiagonalMetricsGiveZero) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const Algebra alg(n, true);
    Matrix up = zero_matrix(alg, n, n);
    for (std::size_t i = 0; i < n; ++i) up[i][i] = AlgebraElement::scalar(alg, Complex(static_cast<long>(i + 2)));
    Connection c = build_levi_civita(LieAlgebra::abelian(alg), HermitianMetric::from_upper(up));
    EXPECT_EQ(c, Connection::zero(LieAlgebra::abelian(alg)));
  }
}

}  // namespace
}  // namespace nclc
