#include "sklyanin/theta.hpp"

#include <cmath>

namespace skl {
namespace {

struct Bits {
  int a, b;
};

Bits bits(ThetaChar ch) {
  switch (ch) {
    case ThetaChar::c00: return {0, 0};
    case ThetaChar::c01: return {0, 1};
    case ThetaChar::c10: return {1, 0};
    case ThetaChar::c11: return {1, 1};
  }
  return {0, 0};
}

// Series value and derivative at a reduced argument.
std::pair<cplx, cplx> series(Bits ab, cplx z, const LatticeParam& lat) {
  const cplx T = lat.tau_lat;
  const double ha = 0.5 * ab.a;
  const cplx w = z + 0.5 * ab.b;
  cplx sum{0.0}, dsum{0.0};
  auto term = [&](int n) {
    const double m = n + ha;
    const cplx t = std::exp(kI * kPi * (m * m * T + 2.0 * m * w));
    sum += t;
    dsum += 2.0 * kI * kPi * m * t;
    return std::abs(t);
  };
  term(0);
  term(-1);
  for (int k = 1; k < 200; ++k) {
    const double big = std::max(term(k), term(-k - 1));
    if (big < lat.series_tol * (std::abs(sum) + 1.0)) break;
  }
  return {sum, dsum};
}

// Reduce z = z0 + m + k·T with z0 in the central strip, returning the factor F
// with theta(z) = F·theta(z0), and k for the derivative correction.
struct Reduction {
  cplx z0;
  cplx factor;
  double k;
};

Reduction reduce_arg(Bits ab, cplx z, const LatticeParam& lat) {
  const cplx T = lat.tau_lat;
  const double y = z.imag() / T.imag();
  const double k = std::round(y);
  cplx z1 = z - k * T;
  const double m = std::round(z1.real());
  const cplx z0 = z1 - m;
  cplx f = std::exp(-kI * kPi * (k * k * T + 2.0 * k * z0));
  const long long kk = static_cast<long long>(k), mm = static_cast<long long>(m);
  if (ab.b && (kk % 2 != 0)) f = -f;
  if (ab.a && (mm % 2 != 0)) f = -f;
  return {z0, f, k};
}

}  // namespace

std::string_view label(ThetaChar ch) {
  switch (ch) {
    case ThetaChar::c00: return "00";
    case ThetaChar::c01: return "01";
    case ThetaChar::c10: return "10";
    case ThetaChar::c11: return "11";
  }
  return "??";
}

ThetaChar parse_char(std::string_view s) {
  for (auto ch : kAllChars)
    if (label(ch) == s) return ch;
  throw Error(Errc::precondition, "unknown theta characteristic '" + std::string(s) + "'");
}

cplx theta(ThetaChar ch, cplx z, const LatticeParam& lat) {
  lat.validate();
  const Bits ab = bits(ch);
  const Reduction r = reduce_arg(ab, z, lat);
  return r.factor * series(ab, r.z0, lat).first;
}

cplx theta_deriv(ThetaChar ch, cplx z, const LatticeParam& lat) {
  lat.validate();
  const Bits ab = bits(ch);
  const Reduction r = reduce_arg(ab, z, lat);
  const auto [v, dv] = series(ab, r.z0, lat);
  return r.factor * (dv - 2.0 * kI * kPi * r.k * v);
}

cplx theta_direct(ThetaChar ch, cplx z, const LatticeParam& lat, int terms) {
  const Bits ab = bits(ch);
  cplx sum{0.0};
  for (int n = -terms; n <= terms; ++n) {
    const double m = n + 0.5 * ab.a;
    sum += std::exp(kI * kPi * (m * m * lat.tau_lat + 2.0 * m * (z + 0.5 * ab.b)));
  }
  return sum;
}

double StructureConstants::identity_residual() const { return std::abs(J12 + J23 + J31 + J12 * J23 * J31); }

StructureConstants structure_constants(const CurvePoint& tau, const LatticeParam& lat) {
  lat.validate();
  if (const auto n = torsion_order(tau); n && (4 % *n == 0))
    throw Error(Errc::unsupported_torsion, "tau has order " + std::to_string(*n) + " (lies in E[4])");
  if (!tau.exact && is_zero(4 * tau))
    throw Error(Errc::unsupported_torsion, "tau lies in E[4]");
  const cplx t = tau.approx;
  const cplx a00 = theta(ThetaChar::c00, t, lat), a01 = theta(ThetaChar::c01, t, lat);
  const cplx a10 = theta(ThetaChar::c10, t, lat), a11 = theta(ThetaChar::c11, t, lat);
  auto sq = [](cplx x) { return x * x; };
  StructureConstants J;
  J.J12 = sq(a11) * sq(a01) / (sq(a00) * sq(a10));
  J.J23 = sq(a11) * sq(a10) / (sq(a00) * sq(a01));
  J.J31 = -sq(a11) * sq(a00) / (sq(a01) * sq(a10));
  return J;
}

}  // namespace skl
