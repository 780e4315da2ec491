#include <gtest/gtest.h>

#include <random>

#include "sklyanin/atlas.hpp"
#include "sklyanin/center.hpp"
#include "sklyanin/linalg.hpp"
#include "support.hpp"

using namespace skl;
using skl::test::curve;
using skl::test::generic_pair;
using skl::test::pair_on;

namespace {

Vec4 random_form(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  Vec4 v;
  for (int i = 0; i < 4; ++i) v(i) = cplx(N(rng), N(rng));
  return v;
}

}  // namespace

TEST(Dag, KernelMatchesDirectAction) {
  const Curve& C = curve(5);
  std::mt19937_64 rng(51);
  for (int t = 0; t < 12; ++t) {
    const auto [p, q] = generic_pair(C, rng);
    const int m = t % (C.s() + 1);
    const Vec4 X = random_form(rng);
    const Vec2 root = dag_root(C, X, p, q, m);
    const DagMatrix dm = dag_matrix(C, X, p, q, m, root);
    const Mat direct = direct_dag_solutions(C, X, p, q, m, root);
    ASSERT_EQ(dm.kernel.cols(), 1) << m;
    ASSERT_EQ(direct.cols(), 1) << m;
    EXPECT_LT(la::subspace_dist(dm.kernel, direct), 1e-8);
    // the kernel vector really maps into C·f_λ
    const auto M = line_module(C, p, q, m + 1);
    const Vec image = M.form(X, m) * dm.kernel.col(0);
    const Vec f = f_lambda(m + 1, dm.scaling.to_balanced(m + 1, root));
    EXPECT_LT(la::proj_dist(image, f), 1e-8);
    // away from the root nothing survives
    const Vec2 other(cplx(0.7, 0.2), cplx(-0.3, 1.1));
    EXPECT_EQ(dag_matrix(C, X, p, q, m, other).kernel.cols(), 0);
    EXPECT_EQ(direct_dag_solutions(C, X, p, q, m, other).cols(), 0);
  }
}

TEST(Dag, ClosedFormDeterminant) {
  const Curve& C = curve(3);
  std::mt19937_64 rng(52);
  for (int m = 0; m <= 3; ++m) {
    const auto [p, q] = generic_pair(C, rng);
    const Vec4 X = random_form(rng);
    const DagMatrix dm = dag_matrix(C, X, p, q, m, Vec2(cplx(0.5, -0.4), cplx(1.2, 0.3)));
    EXPECT_LT((dm.entries - dm.closed_form).norm() / dm.term_scale, 1e-10) << m;
    EXPECT_LT(std::abs(dm.closed_form.determinant() - dm.det_closed) / std::abs(dm.det_closed), 1e-9) << m;
  }
}

TEST(CommonFatPoint, UniqueAndTranslateInvariant) {
  const Curve& C = curve(5);
  const int s = C.s();
  std::mt19937_64 rng(53);
  for (int t = 0; t < 5; ++t) {
    const auto l1 = generic_pair(C, rng);
    const CurvePoint z = l1.first + l1.second;
    const auto l2 = pair_on(C, -z - C.tau_multiple(2), rng);
    if (C.e2_plus_ktau(-z - C.tau_multiple(2))) continue;
    const auto cf = common_fatpoint(C, l1, l2, s + 2);
    ASSERT_EQ(cf.status, "ok");
    ASSERT_TRUE(cf.lambda.has_value());
    EXPECT_LT(cf.uv_distance, 1e-8);
    EXPECT_EQ(cf.certificate_dim, 1);
    const auto cf2 =
        common_fatpoint(C, l1, {l2.first + C.tau_multiple(2), l2.second - C.tau_multiple(2)}, s + 2);
    ASSERT_TRUE(cf2.lambda.has_value());
    EXPECT_LT(la::proj_dist(*cf.lambda, *cf2.lambda), 1e-8);
    // the fat point it names lies on both lines
    const auto Cl = clambda(C, l1.first, l1.second, *cf.lambda, 2 * s + 2);
    EXPECT_TRUE(lies_on(C, Cl.module, s, l1.first, l1.second));
    EXPECT_TRUE(lies_on(C, Cl.module, s, l2.first, l2.second));
  }
}

TEST(CommonFatPoint, RejectsMismatchedFamilies) {
  const Curve& C = curve(3);
  std::mt19937_64 rng(54);
  const auto l1 = generic_pair(C, rng);
  const auto l2 = generic_pair(C, rng);
  try {
    common_fatpoint(C, l1, l2, C.s() + 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::family_mismatch);
  }
}

TEST(CommonFatPoint, BoundaryFamilyHasOneFatPoint) {
  for (int n : {3, 6}) {
    const Curve& C = curve(n);
    const int s = C.s();
    std::mt19937_64 rng(57);
    const auto e2 = two_torsion(C.lattice());
    for (int w = 0; w < 4; ++w) {
      const CurvePoint z = e2[w] - C.tau_multiple(1);
      const auto l1 = pair_on(C, z, rng);
      const auto l2 = pair_on(C, z, rng);
      // the generic operation refuses this family
      EXPECT_THROW(common_fatpoint(C, l1, l2, s + 2), Error);
      const auto cf = boundary_fatpoint(C, l1, l2, s + 2);
      ASSERT_EQ(cf.status, "ok") << "n=" << n << " w=" << w;
      EXPECT_LT(cf.uv_distance, 1e-8);
      EXPECT_EQ(cf.certificate_dim, 1);
      const auto Cl = clambda(C, l1.first, l1.second, *cf.lambda, 2 * s + 2);
      EXPECT_TRUE(lies_on(C, Cl.module, s, l2.first, l2.second));
      std::normal_distribution<double> N;
      for (int r = 0; r < 5; ++r) {
        const Vec2 lam(cplx(N(rng), N(rng)), cplx(N(rng), N(rng)));
        EXPECT_FALSE(lies_on(C, clambda(C, l1.first, l1.second, lam, 2 * s + 2).module, s, l2.first, l2.second));
      }
    }
  }
}

TEST(CommonFatPoint, BoundaryRejectsGenericFamily) {
  const Curve& C = curve(3);
  std::mt19937_64 rng(58);
  const auto l1 = generic_pair(C, rng);
  EXPECT_THROW(boundary_fatpoint(C, l1, l1, C.s() + 2), Error);
}

TEST(LineClass, GenericClassHasSMembers) {
  const Curve& C = curve(5);
  std::mt19937_64 rng(55);
  const auto [p, q] = generic_pair(C, rng);
  const LineClass c = line_class(C, p, q);
  EXPECT_EQ(c.members.size(), 5u);
  EXPECT_FALSE(c.special.has_value());
  for (const auto& m : c.members) {
    EXPECT_TRUE(same_point(m.first + m.second, p + q));
    EXPECT_TRUE(class_contains(line_class(C, m.first, m.second), {p, q}));
  }
}

TEST(LineClass, SpecialFamilyDoubles) {
  const Curve& C = curve(5);
  const int s = C.s();
  std::mt19937_64 rng(56);
  const auto e2 = two_torsion(C.lattice());
  for (int k = 0; k <= s - 2; ++k) {
    const auto [p, q] = pair_on(C, e2[1] + C.tau_multiple(k), rng);
    const LineClass c = line_class(C, p, q);
    ASSERT_TRUE(c.special.has_value());
    EXPECT_EQ(*c.special, std::make_pair(1, k));
    EXPECT_EQ(static_cast<int>(c.members.size()), 2 * s);
    for (int i = 0; i < s; ++i) {
      EXPECT_TRUE(class_contains(c, {p + C.tau_multiple(2 * i), q - C.tau_multiple(2 * i)}));
      EXPECT_TRUE(class_contains(c, {p + C.tau_multiple(2 * i), q - C.tau_multiple(2 * (k + i + 1))}));
    }
  }
}

TEST(TCoordinates, ClassMemberInvariance) {
  const Curve& C = curve(3);
  std::mt19937_64 rng(57);
  for (int t = 0; t < 5; ++t) {
    const auto l1 = generic_pair(C, rng);
    const auto l2 = pair_on(C, -(l1.first + l1.second) - C.tau_multiple(2), rng);
    const TPoint T = t_coordinates(C, l1, l2);
    for (const auto& a : line_class(C, l1.first, l1.second).members)
      for (const auto& b : line_class(C, l2.first, l2.second).members) {
        EXPECT_TRUE(same_tpoint(T, t_coordinates(C, a, b)));
        EXPECT_TRUE(same_tpoint(T, t_coordinates(C, b, a)));
      }
  }
  const auto l1 = generic_pair(C, rng);
  const auto l2 = generic_pair(C, rng);
  EXPECT_THROW(t_coordinates(C, l1, l2), Error);
}

TEST(TCoordinates, DistinctFatPointsOnALineStayDistinct) {
  const Curve& C = curve(5);
  const int s = C.s();
  std::mt19937_64 rng(58);
  const auto l1 = generic_pair(C, rng);
  const CurvePoint zbar = -(l1.first + l1.second) - C.tau_multiple(2);
  std::vector<std::pair<Vec2, TPoint>> seen;
  for (int t = 0; t < 8; ++t) {
    const auto l2 = pair_on(C, zbar, rng);
    const auto cf = common_fatpoint(C, l1, l2, s + 2);
    if (cf.status != "ok") continue;
    const TPoint T = t_coordinates(C, l1, l2);
    for (const auto& [lam, U] : seen)
      EXPECT_EQ(la::proj_dist(lam, *cf.lambda) < 1e-8, same_tpoint(T, U));
    seen.emplace_back(*cf.lambda, T);
  }
  EXPECT_GE(seen.size(), 4u);
}

TEST(Incidence, CriticalModuleLiesOnItsTwoClasses) {
  const Curve& C = curve(3);
  const int s = C.s();
  std::mt19937_64 rng(59);
  const auto l1 = generic_pair(C, rng);
  const CurvePoint z = l1.first + l1.second;
  const auto l2 = pair_on(C, -z - C.tau_multiple(2), rng);
  const auto cf = common_fatpoint(C, l1, l2, s + 2);
  ASSERT_TRUE(cf.lambda.has_value());
  const auto Cl = clambda(C, l1.first, l1.second, *cf.lambda, 2 * s + 2);

  std::vector<LinePair> candidates;
  for (const auto& m : line_class(C, l1.first, l1.second).members) candidates.push_back(m);
  for (const auto& m : line_class(C, l2.first, l2.second).members) candidates.push_back(m);
  const std::size_t incident_count = candidates.size();
  for (int t = 0; t < 4; ++t) candidates.push_back(pair_on(C, z, rng));                      // same family, other class
  for (int t = 0; t < 4; ++t) candidates.push_back(pair_on(C, -z - C.tau_multiple(2), rng));  // likewise
  for (int t = 0; t < 4; ++t) candidates.push_back(generic_pair(C, rng));

  const auto rows = incidence_scan(C, Cl.module, s, candidates);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool in_class = i < incident_count;
    if (!in_class)
      in_class = class_contains(line_class(C, l1.first, l1.second), rows[i].line) ||
                 class_contains(line_class(C, l2.first, l2.second), rows[i].line);
    EXPECT_EQ(rows[i].incident, in_class) << i;
  }
}
