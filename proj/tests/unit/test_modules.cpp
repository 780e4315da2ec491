#include <gtest/gtest.h>

#include <random>

#include "sklyanin/center.hpp"
#include "sklyanin/linalg.hpp"
#include "sklyanin/modules.hpp"
#include "support.hpp"

using namespace skl;
using skl::test::algebra;
using skl::test::curve;
using skl::test::generic_pair;
using skl::test::pair_on;

namespace {

/// Forms u with u·v = 0 for v in degree d, as columns.
Mat killing_forms(const GradedModuleRep& M, int d, const Vec& v) {
  Mat G(M.dims[d + 1], 4);
  for (int i = 0; i < 4; ++i) G.col(i) = M.act[d][i] * v;
  return la::null_space(G, 1e-8, v.norm());
}

Mat random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(N(rng), N(rng));
  return m;
}

}  // namespace

TEST(LineModule, RelationsHold) {
  for (int n : {3, 5, 6, 8}) {
    const Curve& C = curve(n);
    std::mt19937_64 rng(31);
    const RelationSet R = build_relations(C.J());
    for (int t = 0; t < 3; ++t) {
      const auto [p, q] = generic_pair(C, rng);
      const auto M = line_module(C, p, q, 2 * C.s() + 4);
      EXPECT_LT(relation_residual(M, R), 1e-8) << n;
      for (int d = 0; d <= M.top(); ++d) EXPECT_EQ(M.dims[d], d + 1);
    }
  }
}

TEST(LineModule, BalancedAndRawAgree) {
  const Curve& C = curve(5);
  std::mt19937_64 rng(32);
  const auto [p, q] = generic_pair(C, rng);
  const RelationSet R = build_relations(C.J());
  EXPECT_LT(relation_residual(line_module(C, p, q, 6, false), R), 1e-8);
  const LineScaling sc = line_scaling(C, p, q);
  const Vec2 lam(cplx(0.4, -0.2), cplx(1.3, 0.7));
  EXPECT_LT(la::proj_dist(sc.to_raw(5, sc.to_balanced(5, lam)), lam), 1e-14);
}

TEST(LineModule, GeneratorCutsOutItsLine) {
  const Curve& C = curve(3);
  std::mt19937_64 rng(33);
  const auto [p, q] = generic_pair(C, rng);
  const auto M = line_module(C, p, q, 3);
  const Vec e00 = Vec::Ones(1);
  EXPECT_LT(la::subspace_dist(killing_forms(M, 0, e00), C.secant_perp(p, q).perp), 1e-8);
  // A·e_01 is M(p+τ, q-τ)
  Vec e01 = Vec::Zero(2);
  e01(0) = 1.0;
  const auto tau = C.tau_multiple(1);
  EXPECT_LT(la::subspace_dist(killing_forms(M, 1, e01), C.secant_perp(p + tau, q - tau).perp), 1e-8);
}

TEST(LineModule, SpecialLineRejected) {
  const Curve& C = curve(3);
  std::mt19937_64 rng(34);
  const CurvePoint p = C.random_point(rng);
  try {
    line_module(C, p, p + C.tau_multiple(2), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::special_line);
  }
}

TEST(PointModule, GeneratorKilledByPointForms) {
  const Curve& C = curve(5);
  std::mt19937_64 rng(35);
  const CurvePoint p = C.random_point(rng);
  const auto M = point_module(C, p, 6);
  for (int d = 0; d <= M.top(); ++d) EXPECT_EQ(M.dims[d], 1);
  const Mat K = killing_forms(M, 0, Vec::Ones(1));
  EXPECT_EQ(K.cols(), 3);
  EXPECT_LT(la::subspace_dist(K, point_perp(C, p)), 1e-8);
  EXPECT_LT(relation_residual(M, build_relations(C.J())), 1e-8);
}

TEST(VertexModule, PolynomialRingInOneVariable) {
  for (int i = 0; i < 4; ++i) {
    const auto M = vertex_module(i, 5);
    for (int d = 0; d < M.top(); ++d)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(M.act[d][j].norm() > 0.5, j == i);
    EXPECT_LT(relation_residual(M, build_relations(curve(3).J())), 1e-12);
  }
}

TEST(Hom, ShiftBySIsSpannedByCornerElements) {
  for (int n : {3, 5, 6, 8}) {
    const Curve& C = curve(n);
    const int s = C.s();
    std::mt19937_64 rng(36);
    const auto [p, q] = generic_pair(C, rng);
    const auto M = line_module(C, p, q, s + 1);
    const HomSpace H = hom_from_line(C.secant_perp(p - C.tau_multiple(s), q - C.tau_multiple(s)), s, M);
    ASSERT_EQ(H.dim(), 2) << n;
    Mat E = Mat::Zero(s + 1, 2);
    E(0, 0) = E(s, 1) = 1.0;
    EXPECT_LT(la::subspace_dist(H.basis, E), 1e-8);
    // smaller shifts admit nothing
    for (int m = 1; m < s; ++m)
      EXPECT_EQ(hom_from_line(C.secant_perp(p - C.tau_multiple(m), q - C.tau_multiple(m)), m, M).dim(), 0);
  }
}

TEST(Hom, UniqueMapOnSpecialFamilies) {
  for (int n : {3, 5, 6, 8}) {
    const Curve& C = curve(n);
    std::mt19937_64 rng(37);
    const auto e2 = two_torsion(C.lattice());
    for (int w = 0; w < 4; ++w)
      for (int k = 0; k <= C.s() - 2; ++k) {
        const auto [p, q] = pair_on(C, e2[w] + C.tau_multiple(k), rng);
        const auto M = line_module(C, p, q, k + 2);
        const auto src = C.secant_perp(p - C.tau_multiple(k + 1), q - C.tau_multiple(k + 1));
        EXPECT_EQ(hom_from_line(src, k + 1, M).dim(), 1) << n << " " << w << " " << k;
      }
  }
}

TEST(CLambda, HilbertFunctionReachesS) {
  const Curve& C = curve(5);
  const int s = C.s();
  std::mt19937_64 rng(38);
  const auto [p, q] = generic_pair(C, rng);
  const auto Q = clambda(C, p, q, Vec2(cplx(0.6, 0.1), cplx(0.2, -0.9)), 2 * s + 2);
  for (int d = 0; d <= Q.module.top(); ++d) EXPECT_EQ(Q.module.dims[d], d < s ? d + 1 : s) << d;
  EXPECT_LT(relation_residual(Q.module, build_relations(C.J())), 1e-8);
}

TEST(Noncritical, TwoGenericAndThreeSpecial) {
  for (int n : {3, 5}) {
    const Curve& C = curve(n);
    const int s = C.s();
    std::mt19937_64 rng(39);
    const auto [p, q] = generic_pair(C, rng);
    const auto roots = noncritical_lambdas(C, p, q, s + 2);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_LT(la::proj_dist(roots[0].lambda, Vec2(1, 0)) * la::proj_dist(roots[1].lambda, Vec2(1, 0)), 1e-12);
    EXPECT_LT(la::proj_dist(roots[0].lambda, Vec2(0, 1)) * la::proj_dist(roots[1].lambda, Vec2(0, 1)), 1e-12);

    const auto e2 = two_torsion(C.lattice());
    for (int k = 0; k <= s - 2; ++k) {
      const auto [a, b] = pair_on(C, e2[1] + C.tau_multiple(k), rng);
      const auto r3 = noncritical_lambdas(C, a, b, s + 2);
      EXPECT_EQ(r3.size(), 3u) << n << " " << k;
      for (const auto& r : r3) EXPECT_LT(r.vanishing, 1e-8);
    }
  }
}

TEST(FatPoint, MultiplicityAndIncidence) {
  const Curve& C = curve(5);
  std::mt19937_64 rng(40);
  const auto e2 = two_torsion(C.lattice());
  for (int k : {0, 2}) {
    const auto F = intermediate_fatpoint(C, 2, k, rng, 2 * C.s() + 4);
    const auto& dims = F.quotient.module.dims;
    EXPECT_EQ(dims.back(), k + 1);
    EXPECT_EQ(dims[dims.size() - 2], k + 1);
    for (int t = 0; t < 3; ++t) {
      const auto [p2, q2] = pair_on(C, e2[2] + C.tau_multiple(k), rng);
      EXPECT_TRUE(lies_on(C, F.quotient.module, k + 1, p2, q2));
      const auto [p3, q3] = generic_pair(C, rng);
      EXPECT_FALSE(lies_on(C, F.quotient.module, k + 1, p3, q3));
    }
  }
}

TEST(FatPoint, IndependentOfTheChosenLine) {
  const Curve& C = curve(5);
  std::mt19937_64 rng(41);
  const auto& B = algebra(5);
  const int k = 1;
  const auto F1 = intermediate_fatpoint(C, 3, k, rng, 2 * C.s() + 4);
  const auto F2 = intermediate_fatpoint(C, 3, k, rng, 2 * C.s() + 4);
  EXPECT_EQ(F1.quotient.module.dims, F2.quotient.module.dims);
  std::mt19937_64 rng2(1);
  const OmegaLabel om = omega_at(C, B.A, B.center, F1.p + F1.q, rng2);
  const CentralElement comp = complementary_central(B.A, B.center, om);
  const int d0 = 2 * C.s();
  const auto W1 = degrade(F1.quotient.module, comp.word, 1.0, d0, B.rels);
  const auto W2 = degrade(F2.quotient.module, comp.word, 1.0, d0, B.rels);
  EXPECT_EQ(W1.dim, 2 * (k + 1));
  // isomorphic de-gradings have intertwiners, and an invertible one among them
  const Mat T = intertwiners(W1, W2);
  EXPECT_GE(T.cols(), 1);
  // a (k+1)-dimensional simple quotient exists
  const Commutant cm = commutant(W1);
  EXPECT_TRUE(std::any_of(cm.witnesses.begin(), cm.witnesses.end(), [&](const Mat& V) { return V.cols() == k + 1; }));
}

TEST(Degrade, EvenTorsionGivesSimpleOfDimensionN) {
  for (int n : {6, 8}) {
    const Curve& C = curve(n);
    const auto& B = algebra(n);
    std::mt19937_64 rng(42);
    const auto [p, q] = generic_pair(C, rng);
    const auto Cl = clambda(C, p, q, Vec2(cplx(0.6, 0.1), cplx(0.2, -0.9)), 2 * C.s() + 4);
    const OmegaLabel om = omega_at(C, B.A, B.center, p + q, p);
    const CentralElement comp = complementary_central(B.A, B.center, om);
    const auto W = degrade(Cl.module, comp.word, 1.0, C.s(), B.rels);
    EXPECT_EQ(W.dim, n);
    EXPECT_LT(relation_residual(W, B.rels), 1e-8);
    EXPECT_EQ(commutant(W).dim, 1);
    EXPECT_EQ(generated_algebra_dim(W), n * n);
  }
}

TEST(Degrade, OddTorsionSplitsIntoTwoSimples) {
  const Curve& C = curve(3);
  const auto& B = algebra(3);
  std::mt19937_64 rng(43);
  const auto [p, q] = generic_pair(C, rng);
  const auto Cl = clambda(C, p, q, Vec2(cplx(0.6, 0.1), cplx(0.2, -0.9)), 2 * C.s() + 4);
  const OmegaLabel om = omega_at(C, B.A, B.center, p + q, p);
  const auto W = degrade(Cl.module, complementary_central(B.A, B.center, om).word, 1.0, C.s(), B.rels);
  EXPECT_EQ(W.dim, 2 * C.s());
  const Commutant cm = commutant(W);
  EXPECT_GE(cm.dim, 2);
  EXPECT_LT(cm.witness_residual, 1e-8);
  const auto it = std::find_if(cm.witnesses.begin(), cm.witnesses.end(), [&](const Mat& V) { return V.cols() == 3; });
  ASSERT_NE(it, cm.witnesses.end());
  const auto S = restrict_to(W, *it, B.rels);
  EXPECT_LT(relation_residual(S, B.rels), 1e-8);
  EXPECT_EQ(commutant(S).dim, 1);
}

TEST(StandardPolynomial, SmallCasesAgainstDefinition) {
  std::mt19937_64 rng(44);
  const Mat a = random_matrix(rng, 3), b = random_matrix(rng, 3), c = random_matrix(rng, 3);
  EXPECT_LT((standard_polynomial({a, b}) - (a * b - b * a)).norm(), 1e-12);
  const Mat s3 = a * b * c - a * c * b - b * a * c + b * c * a + c * a * b - c * b * a;
  EXPECT_LT((standard_polynomial({a, b, c}) - s3).norm(), 1e-11);
}

TEST(StandardPolynomial, AmitsurLevitzkiOnRandomMatrices) {
  std::mt19937_64 rng(45);
  for (int N : {2, 3}) {
    std::vector<Mat> a;
    for (int i = 0; i < 2 * N; ++i) a.push_back(random_matrix(rng, N));
    double scale = 1.0;
    for (const auto& m : a) scale *= m.norm();
    EXPECT_LT(standard_polynomial(a).norm() / scale, 1e-12) << N;
    a.resize(2 * N - 2);
    scale = 1.0;
    for (const auto& m : a) scale *= m.norm();
    EXPECT_GT(standard_polynomial(a).norm() / scale, 1e-3) << N;
  }
}

TEST(StandardPolynomial, BudgetIsEnforced) {
  FiniteDimModule W;
  W.dim = 2;
  for (auto& m : W.mats) m = Mat::Identity(2, 2);
  EXPECT_THROW(standard_identity_residual(W, 11, 1, 1, 3628800.0), Error);
  EXPECT_DOUBLE_EQ(standard_identity_cost(10), 3628800.0);
}
