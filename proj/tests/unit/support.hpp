#pragma once

#include <map>
#include <memory>
#include <random>

#include "sklyanin/algebra.hpp"
#include "sklyanin/calibrate.hpp"
#include "sklyanin/center.hpp"
#include "sklyanin/curve.hpp"

namespace skl::test {

inline RatPair order_n(int n) { return {Rational(1, n), Rational(0)}; }

/// Calibrated curve with τ = 1/n on the default lattice, built once per n.
inline const Curve& curve(int n) {
  static std::map<int, std::unique_ptr<Curve>> cache;
  auto& slot = cache[n];
  if (!slot) {
    const LatticeParam lat;
    slot = std::make_unique<Curve>(lat, order_n(n), calibrate(lat, order_n(n)).best);
  }
  return *slot;
}

struct AlgebraBundle {
  RelationSet rels;
  GradedAlgebra A;
  std::vector<CentralElement> center;
};

inline const AlgebraBundle& algebra(int n, int dmax = 4) {
  static std::map<std::pair<int, int>, std::unique_ptr<AlgebraBundle>> cache;
  auto& slot = cache[{n, dmax}];
  if (!slot) {
    RelationSet R = build_relations(curve(n).J());
    GradedAlgebra A(R, dmax);
    auto Z = center_degree2(A);
    slot = std::make_unique<AlgebraBundle>(AlgebraBundle{R, std::move(A), std::move(Z)});
  }
  return *slot;
}

inline std::pair<CurvePoint, CurvePoint> generic_pair(const Curve& C, std::mt19937_64& rng) {
  for (;;) {
    auto p = C.random_point(rng), q = C.random_point(rng);
    if (!C.is_special_pair(p, q) && !C.e2_plus_ktau(p + q)) return {p, q};
  }
}

inline std::pair<CurvePoint, CurvePoint> pair_on(const Curve& C, const CurvePoint& z, std::mt19937_64& rng) {
  for (;;) {
    auto p = C.random_point(rng);
    auto q = z - p;
    if (!C.is_special_pair(p, q)) return {p, q};
  }
}

}  // namespace skl::test
