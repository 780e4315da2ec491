#pragma once

#include <random>
#include <vector>

#include "sklyanin/modules.hpp"

namespace skl {

/// The central element Ω(z), up to scalar, as the unique direction in the
/// degree-2 center killing the generator of M(p, z-p).
struct OmegaLabel {
  CentralElement element;
  Vec2 center_coords;        // coefficients on the center basis, canonically normalized
  int annihilator_dim = 0;   // dim of the annihilating subspace (expected 1)
  double residual = 0.0;
};

OmegaLabel omega_at(const Curve& curve, const GradedAlgebra& A, const std::vector<CentralElement>& center,
                    const CurvePoint& z, const CurvePoint& p);
OmegaLabel omega_at(const Curve& curve, const GradedAlgebra& A, const std::vector<CentralElement>& center,
                    const CurvePoint& z, std::mt19937_64& rng);

/// max_d ‖Ω·M_d‖ / (‖Ω‖ · max_ij ‖x_i x_j·M_d‖).
double annihilation_residual(const Mat4& omega_word, const GradedModuleRep& M);

struct AvoiderFactor {
  int omega_index = 0;
  int k = 0;
  OmegaLabel omega;
};

/// The factors Ω(ω+kτ), ω ∈ E[2], 0 <= k <= s-1, of the central element c.
/// c itself is never multiplied out.
std::vector<AvoiderFactor> azumaya_avoider(const Curve& curve, const GradedAlgebra& A,
                                           const std::vector<CentralElement>& center, std::mt19937_64& rng);

/// The center element orthogonal to Ω inside span(Ω1, Ω2).
CentralElement complementary_central(const GradedAlgebra& A, const std::vector<CentralElement>& center,
                                     const OmegaLabel& omega);

}  // namespace skl
