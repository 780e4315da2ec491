#pragma once

#include "sklyanin/algebra.hpp"
#include "sklyanin/curve.hpp"

namespace skl {

/// Max relation residual of line modules on a few fixed generic lines, up to degree D.
double calibration_residual(const Curve& curve, const RelationSet& R, int lines = 3, int D = 3);

struct CalibrationSearch {
  Calibration best;
  int candidates_tried = 0;
};

/// Searches the assignment of even theta functions to x1..x3, a base constant
/// family and a phase in {1, i, -1, -i} per coordinate; accepts the first
/// candidate (in a fixed order) whose residual is below accept_tol, otherwise
/// returns the best one seen.
CalibrationSearch calibrate(const LatticeParam& lat, const RatPair& tau, double accept_tol = 1e-11);

}  // namespace skl
