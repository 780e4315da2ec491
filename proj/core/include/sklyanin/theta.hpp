#pragma once

#include <array>
#include <string_view>

#include "sklyanin/point.hpp"

// Jacobi theta functions with characteristics, nome q = exp(i·pi·T):
//
//   theta_ab(z) = sum_n exp(i·pi·(n + a/2)^2·T + 2·pi·i·(n + a/2)·(z + b/2))
//
// theta_11 is odd and vanishes exactly on Λ = Z + Z·T; the other three are even.
// Quasi-periodicity used for argument reduction:
//   theta_ab(z + 1) = (-1)^a theta_ab(z)
//   theta_ab(z + T) = (-1)^b exp(-i·pi·T - 2·pi·i·z) theta_ab(z)
namespace skl {

enum class ThetaChar { c00, c01, c10, c11 };

inline constexpr std::array<ThetaChar, 4> kAllChars{ThetaChar::c00, ThetaChar::c01, ThetaChar::c10,
                                                    ThetaChar::c11};

std::string_view label(ThetaChar ch);
ThetaChar parse_char(std::string_view label);

cplx theta(ThetaChar ch, cplx z, const LatticeParam& lat);

/// d/dz theta_ch(z), summed analytically from the same series.
cplx theta_deriv(ThetaChar ch, cplx z, const LatticeParam& lat);

/// Plain truncated series without argument reduction; reference oracle for tests.
cplx theta_direct(ThetaChar ch, cplx z, const LatticeParam& lat, int terms);

struct StructureConstants {
  cplx J12, J23, J31;

  /// |J12 + J23 + J31 + J12·J23·J31|
  double identity_residual() const;
};

/// J12 = th11^2 th01^2 / (th00^2 th10^2),  J23 = th11^2 th10^2 / (th00^2 th01^2),
/// J31 = -th11^2 th00^2 / (th01^2 th10^2), every theta evaluated at tau.
/// Throws Errc::unsupported_torsion for tau in E[4] (which includes lattice points).
StructureConstants structure_constants(const CurvePoint& tau, const LatticeParam& lat);

}  // namespace skl
