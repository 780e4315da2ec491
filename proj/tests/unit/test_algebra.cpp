#include <gtest/gtest.h>

#include <random>

#include "sklyanin/center.hpp"
#include "sklyanin/linalg.hpp"
#include "support.hpp"

using namespace skl;
using skl::test::algebra;
using skl::test::curve;

namespace {

Vec random_vec(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> N;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(N(rng), N(rng));
  return v;
}

}  // namespace

TEST(Relations, SixIndependentQuadrics) {
  for (int n : {3, 5, 6, 8}) EXPECT_EQ(build_relations(curve(n).J()).span_dim(), 6) << n;
}

TEST(Algebra, LowDegreeDimensions) {
  const auto& B = algebra(3);
  EXPECT_EQ(B.A.component(0).dim, 1);
  EXPECT_EQ(B.A.component(1).dim, 4);
  EXPECT_EQ(B.A.component(2).dim, 10);  // 16 - 6
  EXPECT_EQ(B.A.component(3).dim, 20);
  EXPECT_EQ(B.A.component(4).dim, 35);
}

TEST(Algebra, HilbertSeriesThroughDegreeEight) {
  for (int n : {3, 8}) {
    const GradedAlgebra A(build_relations(curve(n).J()), 8);
    for (int d = 0; d <= 8; ++d) {
      EXPECT_TRUE(A.hilbert_ok(d)) << n << " " << d;
      if (d >= 2) EXPECT_GT(A.component(d).smallest_kept, 1e6 * A.component(d).largest_discarded) << n << " " << d;
    }
  }
}

TEST(Algebra, RelationsVanish) {
  const auto& B = algebra(5);
  for (const auto& r : B.rels.rels) {
    Vec sum = Vec::Zero(B.A.component(2).dim);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (r(i, j) != 0.0) sum += r(i, j) * B.A.word({i, j});
    EXPECT_LT(sum.norm(), 1e-12);
  }
}

TEST(Algebra, MultiplicationIsAssociative) {
  const auto& B = algebra(5);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    const Vec a = random_vec(rng, 4), b = random_vec(rng, 10), c = random_vec(rng, 4);
    const Vec left = B.A.multiply(B.A.multiply(a, 1, b, 2), 3, c, 1);
    const Vec right = B.A.multiply(a, 1, B.A.multiply(b, 2, c, 1), 3);
    EXPECT_LT((left - right).norm(), 1e-11 * left.norm());
  }
}

TEST(Algebra, LiftTwoRoundTrips) {
  const auto& B = algebra(3);
  std::mt19937_64 rng(22);
  const Vec a = random_vec(rng, 10);
  const Mat4 w = B.A.lift2(a);
  Vec back = Vec::Zero(10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) back += w(i, j) * B.A.word({i, j});
  EXPECT_LT((back - a).norm(), 1e-12 * a.norm());
}

TEST(Center, TwoCentralElementsOfDegreeTwo) {
  for (int n : {3, 5, 6, 8}) {
    const auto& B = algebra(n);
    ASSERT_EQ(B.center.size(), 2u) << n;
    for (const auto& z : B.center) EXPECT_LT(z.commutator_residual, 1e-8);
  }
}

TEST(Center, CommutesWithDegreeTwoProducts) {
  const auto& B = algebra(5, 4);
  std::mt19937_64 rng(23);
  for (const auto& z : B.center)
    for (int t = 0; t < 5; ++t) {
      const Vec a = B.A.multiply(random_vec(rng, 4), 1, random_vec(rng, 4), 1);
      const Vec za = B.A.multiply(z.coeffs, 2, a, 2), az = B.A.multiply(a, 2, z.coeffs, 2);
      EXPECT_LT((za - az).norm(), 1e-8 * za.norm());
    }
}

TEST(Omega, LabelIsWellDefined) {
  const Curve& C = curve(5);
  const auto& B = algebra(5);
  std::mt19937_64 rng(24);
  for (int t = 0; t < 5; ++t) {
    const CurvePoint z = C.random_point(rng);
    const OmegaLabel a = omega_at(C, B.A, B.center, z, rng);
    const OmegaLabel b = omega_at(C, B.A, B.center, z, rng);  // another line of L(z)
    const OmegaLabel c = omega_at(C, B.A, B.center, -z - C.tau_multiple(2), rng);
    EXPECT_EQ(a.annihilator_dim, 1);
    EXPECT_EQ(c.annihilator_dim, 1);
    EXPECT_LT(la::proj_dist(a.center_coords, b.center_coords), 1e-8);
    EXPECT_LT(la::proj_dist(a.center_coords, c.center_coords), 1e-8);
    // and it is not the label of an unrelated family
    const OmegaLabel d = omega_at(C, B.A, B.center, C.random_point(rng), rng);
    EXPECT_GT(la::proj_dist(a.center_coords, d.center_coords), 1e-6);
  }
}

TEST(Omega, AvoiderFactors) {
  const Curve& C = curve(3);
  const auto& B = algebra(3);
  std::mt19937_64 rng(25);
  const auto factors = azumaya_avoider(C, B.A, B.center, rng);
  EXPECT_EQ(static_cast<int>(factors.size()), 4 * C.s());

  for (int w = 0; w < 4; ++w)
    for (int k = 0; k <= C.s() - 2; ++k) {
      const FatPointBuild F = intermediate_fatpoint(C, w, k, rng, 2 * C.s() + 4);
      const bool killed = std::any_of(factors.begin(), factors.end(), [&](const AvoiderFactor& f) {
        return annihilation_residual(f.omega.element.word, F.quotient.module) < 1e-8;
      });
      EXPECT_TRUE(killed) << w << " " << k;
    }

  // a critical C^λ on a generic line is killed by none of them
  const auto [p, q] = skl::test::generic_pair(C, rng);
  const QuotientResult Cl = clambda(C, p, q, Vec2(cplx(0.3, 0.2), cplx(-1.1, 0.4)), 2 * C.s() + 2);
  for (const auto& f : factors) EXPECT_GT(annihilation_residual(f.omega.element.word, Cl.module), 1e-3);
}
