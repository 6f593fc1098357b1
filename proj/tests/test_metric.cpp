#include <gtest/gtest.h>

#include <functional>

#include "metric_support.hpp"
#include "rho_oracle.hpp"

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

Matrix parse_matrix(const std::vector<std::vector<const char*>>& rows, const Algebra& alg = T3) {
  Matrix m;
  for (const auto& r : rows) {
    std::vector<AlgebraElement> row;
    for (const char* s : r) row.push_back(P(s, alg));
    m.push_back(row);
  }
  return m;
}

TEST(Validate, IdentityAndBlockMetric) {
  EXPECT_NO_THROW(validate(HermitianMetric::identity(T3, 3)));
  for (const char* h0 : {"U2", "U1", "2*i*U2*U3^-1", "q[1,2]*U3"}) {
    HermitianMetric h = testing::block_metric(P(h0));
    EXPECT_NO_THROW(validate(h));
    EXPECT_EQ(h.low(1, 2), star(invert(P(h0))));
    EXPECT_EQ(h.low(2, 1), invert(P(h0)));
  }
}

TEST(Validate, Violations) {
  Matrix up = identity_matrix(T3, 3);
  up[0][1] = P("U1");
  up[1][0] = P("U2");
  EXPECT_EQ(kind_of([&] { HermitianMetric(up, identity_matrix(T3, 3)); }), ErrorKind::NotHermitian);
  Matrix twice = identity_matrix(T3, 3);
  twice[0][0] = P("2");
  EXPECT_EQ(kind_of([&] { HermitianMetric(twice, identity_matrix(T3, 3)); }), ErrorKind::NotInverse);
  auto v = find_violation(twice, identity_matrix(T3, 3));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->i, 0u);
  EXPECT_EQ(v->j, 0u);
}

TEST(Invert, ScalarDiagonalAndBlock) {
  Matrix d = parse_matrix({{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "-3"}});
  Matrix inv = invert_metric(d);
  EXPECT_EQ(inv, parse_matrix({{"1/2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "-1/3"}}));
  for (const char* h0 : {"U2", "U1", "2*i*U2*U3^-1"}) {
    HermitianMetric expected = testing::block_metric(P(h0));
    EXPECT_EQ(invert_metric(expected.upper()), expected.lower()) << h0;
    EXPECT_EQ(HermitianMetric::from_upper(expected.upper()).lower(), expected.lower());
  }
}

TEST(Invert, NeedsMonomialPivots) {
  Matrix m = parse_matrix({{"U1 + U1^-1", "0"}, {"0", "1"}});
  EXPECT_EQ(kind_of([&] { invert_metric(m); }), ErrorKind::NotInvertibleByElimination);
}

TEST(Invert, RecoversCongruenceInverses) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix Pm = identity_matrix(T3, 3);
    // Monomial off-diagonal entries keep every elimination pivot monomial.
    Pm[1][0] = gen.monomial(T3);
    Pm[2][1] = gen.monomial(T3);
    HermitianMetric h = testing::congruence_metric(Pm, testing::random_diagonal(gen, 3));
    try {
      Matrix inv = invert_metric(h.upper());
      EXPECT_EQ(inv, h.lower());
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotInvertibleByElimination);
    }
  }
}

TEST(Lowered, EvaluationIsLowerMetric) {
  HermitianMetric h = testing::block_metric(P("U2"));
  Matrix th = lowered_evaluation(h);
  EXPECT_EQ(th[1][2], star(P("U2^-1")));
  EXPECT_EQ(th[2][1], P("U2^-1"));
  EXPECT_TRUE(is_identity(lowered_evaluation(HermitianMetric::identity(T3, 3))));
  testing::Gen gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMetric g = testing::general_congruence_metric(gen, T3, 3);
    Matrix t = lowered_evaluation(g);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(star(t[i][a]), g.low(a, i));
  }
}

TEST(Rho, DiagonalAndBlockExamples) {
  EXPECT_TRUE(symmetry_form(G3, HermitianMetric::identity(T3, 3)).is_zero());
  HermitianMetric h = testing::block_metric(P("U2"));
  KForm rho = symmetry_form(G3, h);
  EXPECT_EQ(rho({1, 2}), star(P("U2^-1")) - P("U2^-1"));
  EXPECT_TRUE(rho({0, 1}).is_zero());
  EXPECT_TRUE(rho({0, 2}).is_zero());
  // rho_ab = h_ab - h_ab^* is antihermitian componentwise.
  EXPECT_EQ(form_star(rho), -rho);
  EXPECT_TRUE(weak_symmetry_defect(G3, h).is_zero());
}

TEST(Rho, BlockMetricWithU1IsNotWeaklySymmetric) {
  HermitianMetric h = testing::block_metric(P("U1"));
  KForm drho = weak_symmetry_defect(G3, h);
  EXPECT_FALSE(drho.is_zero());
  EXPECT_FALSE(is_weakly_symmetric(G3, h));
  // d rho(1,2,3) = d_1 rho_23 = d_1(U1 - U1^-1) = i U1 + i U1^-1
  EXPECT_EQ(drho({0, 1, 2}), P("i*U1 + i*U1^-1"));
}

TEST(Rho, MatchesWedgeOraclesOnRandomMetrics) {
  testing::Gen gen(8);
  std::vector<LieAlgebra> algebras = {LieAlgebra::abelian(Algebra(3)), LieAlgebra::abelian(Algebra(4)),
                                      LieAlgebra::abelian(Algebra(3, true)), testing::euclidean2()};
  for (const LieAlgebra& g : algebras)
    for (int trial = 0; trial < 8; ++trial) {
      HermitianMetric h = testing::general_congruence_metric(gen, g.algebra(), g.dim());
      KForm rho = symmetry_form(g, h);
      EXPECT_EQ(rho, testing::rho_oracle(g, h));
      EXPECT_EQ(form_star(rho), -rho);
      EXPECT_EQ(weak_symmetry_defect(g, h), testing::drho_oracle(g, h));
    }
}

TEST(Rho, ClosedWhenRankAtMostTwo) {
  testing::Gen gen(9);
  const LieAlgebra g2 = LieAlgebra::abelian(Algebra(2));
  for (int trial = 0; trial < 20; ++trial) {
    HermitianMetric h = testing::general_congruence_metric(gen, g2.algebra(), 2);
    EXPECT_TRUE(weak_symmetry_defect(g2, h).is_zero());
  }
}

TEST(Rho, CommutingCongruenceMetricsAreWeaklySymmetric) {
  testing::Gen gen(10);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMetric h = testing::commuting_congruence_metric(gen, T3, 3, static_cast<std::size_t>(trial % 3));
    EXPECT_TRUE(symmetry_form(G3, h).is_zero());
  }
}

}  // namespace
}  // namespace nclc
