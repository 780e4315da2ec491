#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>

#include "sklyanin/lattice.hpp"

namespace skl {

using Rational = boost::rational<std::int64_t>;

/// r1 + r2·tau_lat, read modulo Λ.
struct RatPair {
  Rational r1{0};
  Rational r2{0};

  friend bool operator==(const RatPair&, const RatPair&) = default;
};

/// Lexicographic order on (r1, r2); used for canonical forms.
bool operator<(const RatPair& a, const RatPair& b);

/// A point of E = C/Λ. `approx` always lies in the fundamental domain
/// [0,1) + [0,1)·tau_lat; `exact` is present for points with rational coordinates.
struct CurvePoint {
  std::optional<RatPair> exact;
  cplx approx{0.0, 0.0};
  cplx tau_lat{0.31, 1.17};

  bool is_exact() const { return exact.has_value(); }
  std::string str() const;
};

CurvePoint reduce(cplx z, const LatticeParam& lat);
CurvePoint reduce(const RatPair& r, const LatticeParam& lat);
RatPair reduce_pair(const RatPair& r);

CurvePoint operator+(const CurvePoint& a, const CurvePoint& b);
CurvePoint operator-(const CurvePoint& a, const CurvePoint& b);
CurvePoint operator-(const CurvePoint& a);
CurvePoint operator*(std::int64_t k, const CurvePoint& a);

/// Exact when both sides carry rational coordinates, else compared modulo Λ at 1e-9.
bool same_point(const CurvePoint& a, const CurvePoint& b);
bool is_zero(const CurvePoint& a);

/// Smallest m > 0 with m·p ∈ Λ, or nullopt for approx-only points.
std::optional<std::int64_t> torsion_order(const CurvePoint& p);

/// The four points of E[2] in the fixed order 0, 1/2, T/2, (1+T)/2.
std::array<CurvePoint, 4> two_torsion(const LatticeParam& lat);

}  // namespace skl
