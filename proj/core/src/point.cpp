#include "sklyanin/point.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace skl {
namespace {

Rational frac(const Rational& r) {
  // floor for boost::rational: integer division rounds toward zero
  std::int64_t f = r.numerator() / r.denominator();
  if (r.numerator() < 0 && r.numerator() % r.denominator() != 0) --f;
  return r - Rational(f);
}

cplx value(const RatPair& r, cplx tau_lat) {
  return boost::rational_cast<double>(r.r1) + boost::rational_cast<double>(r.r2) * tau_lat;
}

}  // namespace

void LatticeParam::validate() const {
  if (!(tau_lat.imag() >= 0.3))
    throw Error(Errc::invalid_lattice, "Im(tau_lat) must be >= 0.3");
  if (!(series_tol > 0.0 && series_tol < 1e-6))
    throw Error(Errc::invalid_lattice, "series_tol must lie in (0, 1e-6)");
}

bool operator<(const RatPair& a, const RatPair& b) {
  if (a.r1 != b.r1) return a.r1 < b.r1;
  return a.r2 < b.r2;
}

std::string CurvePoint::str() const {
  std::ostringstream os;
  if (exact)
    os << exact->r1 << " + " << exact->r2 << "*T";
  else
    os << approx;
  return os.str();
}

RatPair reduce_pair(const RatPair& r) { return {frac(r.r1), frac(r.r2)}; }

CurvePoint reduce(const RatPair& r, const LatticeParam& lat) {
  CurvePoint p;
  p.exact = reduce_pair(r);
  p.tau_lat = lat.tau_lat;
  p.approx = value(*p.exact, lat.tau_lat);
  return p;
}

CurvePoint reduce(cplx z, const LatticeParam& lat) {
  const double b = z.imag() / lat.tau_lat.imag();
  const double a = z.real() - b * lat.tau_lat.real();
  double fa = a - std::floor(a), fb = b - std::floor(b);
  // snap values within rounding of 1 back to 0 so lattice points reduce to 0
  if (fa > 1.0 - 1e-13) fa = 0.0;
  if (fb > 1.0 - 1e-13) fb = 0.0;
  CurvePoint p;
  p.tau_lat = lat.tau_lat;
  p.approx = fa + fb * lat.tau_lat;
  return p;
}

namespace {

CurvePoint combine(const CurvePoint& a, const CurvePoint& b, int sign) {
  LatticeParam lat;
  lat.tau_lat = a.tau_lat;
  if (a.exact && b.exact) {
    RatPair r{a.exact->r1 + sign * b.exact->r1, a.exact->r2 + sign * b.exact->r2};
    return reduce(r, lat);
  }
  return reduce(a.approx + static_cast<double>(sign) * b.approx, lat);
}

}  // namespace

CurvePoint operator+(const CurvePoint& a, const CurvePoint& b) { return combine(a, b, 1); }
CurvePoint operator-(const CurvePoint& a, const CurvePoint& b) { return combine(a, b, -1); }

CurvePoint operator-(const CurvePoint& a) {
  CurvePoint zero;
  zero.tau_lat = a.tau_lat;
  if (a.exact) zero.exact = RatPair{};
  return combine(zero, a, -1);
}

CurvePoint operator*(std::int64_t k, const CurvePoint& a) {
  LatticeParam lat;
  lat.tau_lat = a.tau_lat;
  if (a.exact) return reduce(RatPair{Rational(k) * a.exact->r1, Rational(k) * a.exact->r2}, lat);
  return reduce(static_cast<double>(k) * a.approx, lat);
}

bool same_point(const CurvePoint& a, const CurvePoint& b) {
  if (a.exact && b.exact) return reduce_pair(*a.exact) == reduce_pair(*b.exact);
  return is_zero(a - b);
}

bool is_zero(const CurvePoint& a) {
  if (a.exact) return reduce_pair(*a.exact) == RatPair{};
  // approx lives in [0,1)+[0,1)T, so near-zero may appear near any corner
  const cplx t = a.tau_lat;
  for (cplx corner : {cplx(0), cplx(1), t, 1.0 + t})
    if (std::abs(a.approx - corner) < 1e-9) return true;
  return false;
}

std::optional<std::int64_t> torsion_order(const CurvePoint& p) {
  if (!p.exact) return std::nullopt;
  const RatPair r = reduce_pair(*p.exact);
  return std::lcm(r.r1.denominator(), r.r2.denominator());
}

std::array<CurvePoint, 4> two_torsion(const LatticeParam& lat) {
  const Rational h(1, 2);
  return {reduce(RatPair{0, 0}, lat), reduce(RatPair{h, 0}, lat), reduce(RatPair{0, h}, lat),
          reduce(RatPair{h, h}, lat)};
}

}  // namespace skl
