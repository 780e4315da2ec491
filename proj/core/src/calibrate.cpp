#include "sklyanin/calibrate.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "sklyanin/modules.hpp"

namespace skl {

double calibration_residual(const Curve& curve, const RelationSet& R, int lines, int D) {
  static const std::array<RatPair, 5> ps{RatPair{Rational(137, 1009), Rational(421, 1009)},
                                         RatPair{Rational(702, 1009), Rational(95, 1009)},
                                         RatPair{Rational(333, 1009), Rational(808, 1009)},
                                         RatPair{Rational(51, 1009), Rational(250, 1009)},
                                         RatPair{Rational(919, 1009), Rational(604, 1009)}};
  static const std::array<RatPair, 5> qs{RatPair{Rational(560, 1009), Rational(77, 1009)},
                                         RatPair{Rational(18, 1009), Rational(640, 1009)},
                                         RatPair{Rational(871, 1009), Rational(312, 1009)},
                                         RatPair{Rational(444, 1009), Rational(999, 1009)},
                                         RatPair{Rational(275, 1009), Rational(133, 1009)}};
  double worst = 0.0;
  for (int l = 0; l < std::min(lines, 5); ++l)
    worst = std::max(worst, relation_residual(line_module(curve, curve.point(ps[l]), curve.point(qs[l]), D), R));
  return worst;
}

CalibrationSearch calibrate(const LatticeParam& lat, const RatPair& tau, double accept_tol) {
  const Curve probe(lat, tau);
  const RelationSet R = build_relations(probe.J());
  const cplx t = probe.tau().approx;

  using Base = std::function<cplx(ThetaChar)>;
  const std::vector<std::pair<std::string, Base>> bases{
      {"1", [](ThetaChar) { return cplx(1.0); }},
      {"theta(tau)", [&](ThetaChar c) { return theta(c, t, lat); }},
      {"theta(tau)^2", [&](ThetaChar c) { return std::pow(theta(c, t, lat), 2); }},
      {"1/theta(tau)", [&](ThetaChar c) { return 1.0 / theta(c, t, lat); }},
      {"theta(2tau)", [&](ThetaChar c) { return theta(c, 2.0 * t, lat); }},
      {"theta(tau)theta(2tau)", [&](ThetaChar c) { return theta(c, t, lat) * theta(c, 2.0 * t, lat); }},
  };
  std::array<ThetaChar, 3> evens{ThetaChar::c00, ThetaChar::c01, ThetaChar::c10};
  const std::array<cplx, 4> powers{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

  CalibrationSearch out;
  out.best.residual = std::numeric_limits<double>::infinity();
  std::sort(evens.begin(), evens.end());
  do {
    for (const auto& [name, base] : bases) {
      for (int ph = 0; ph < 64; ++ph) {
        Calibration cal;
        cal.chars = {ThetaChar::c11, evens[0], evens[1], evens[2]};
        cal.base = name;
        cal.phase = {0, ph % 4, (ph / 4) % 4, ph / 16};
        for (int j = 0; j < 4; ++j) cal.c[j] = base(cal.chars[j]) * powers[cal.phase[j]];
        const Curve curve = probe.with_calibration(cal);
        cal.residual = calibration_residual(curve, R, 2, 3);
        ++out.candidates_tried;
        if (cal.residual < out.best.residual) out.best = cal;
        if (cal.residual < accept_tol) return out;
      }
    }
  } while (std::next_permutation(evens.begin(), evens.end()));
  return out;
}

}  // namespace skl
