#include "sklyanin/center.hpp"

#include "sklyanin/linalg.hpp"

namespace skl {

OmegaLabel omega_at(const Curve& curve, const GradedAlgebra& A, const std::vector<CentralElement>& center,
                    const CurvePoint& z, const CurvePoint& p) {
  if (center.size() != 2) throw Error(Errc::precondition, "omega_at needs a 2-dimensional center");
  const CurvePoint q = z - p;
  const GradedModuleRep M = line_module(curve, p, q, 2);
  Mat S(M.dims[2], 2);
  for (int b = 0; b < 2; ++b) {
    const Vec img = M.quadratic(center[b].word, 0).col(0);
    S.col(b) = img;
  }
  const Mat ker = la::null_space(S, 1e-8);
  OmegaLabel out;
  out.annihilator_dim = static_cast<int>(ker.cols());
  if (ker.cols() != 1)
    throw Error(Errc::inconsistency, "annihilating subspace of the center has dim " + std::to_string(ker.cols()));
  out.center_coords = la::canonical_projective(ker.col(0));
  const Vec coeffs = la::canonical_projective(out.center_coords(0) * center[0].coeffs +
                                              out.center_coords(1) * center[1].coeffs);
  out.element = make_central(A, coeffs / coeffs.norm());
  const auto sv = la::singular_values(S);
  out.residual = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  return out;
}

OmegaLabel omega_at(const Curve& curve, const GradedAlgebra& A, const std::vector<CentralElement>& center,
                    const CurvePoint& z, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const CurvePoint p = curve.random_point(rng);
    if (curve.is_special_pair(p, z - p)) continue;
    return omega_at(curve, A, center, z, p);
  }
  throw Error(Errc::degenerate_input, "no generic secant found in L(z)");
}

double annihilation_residual(const Mat4& w, const GradedModuleRep& M) {
  double worst = 0.0;
  for (int d = 0; d + 2 <= M.top(); ++d) {
    // Relative to what a unit quadratic form could produce: individual terms of w may
    // all be round-off on modules where only some x_i act.
    double monomial = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) monomial = std::max(monomial, (M.act[d + 1][i] * M.act[d][j]).norm());
    const double scale = w.norm() * monomial;
    if (scale > 0.0) worst = std::max(worst, M.quadratic(w, d).norm() / scale);
  }
  return worst;
}

std::vector<AvoiderFactor> azumaya_avoider(const Curve& curve, const GradedAlgebra& A,
                                           const std::vector<CentralElement>& center, std::mt19937_64& rng) {
  const auto e2 = two_torsion(curve.lattice());
  std::vector<AvoiderFactor> out;
  for (int w = 0; w < 4; ++w)
    for (int k = 0; k < curve.s(); ++k) {
      AvoiderFactor f;
      f.omega_index = w;
      f.k = k;
      f.omega = omega_at(curve, A, center, e2[w] + curve.tau_multiple(k), rng);
      out.push_back(std::move(f));
    }
  return out;
}

CentralElement complementary_central(const GradedAlgebra& A, const std::vector<CentralElement>& center,
                                     const OmegaLabel& omega) {
  const Vec2 c = omega.center_coords;
  const Vec2 perp(-std::conj(c(1)), std::conj(c(0)));
  const Vec coeffs = perp(0) * center[0].coeffs + perp(1) * center[1].coeffs;
  return make_central(A, coeffs / coeffs.norm());
}

}  // namespace skl
