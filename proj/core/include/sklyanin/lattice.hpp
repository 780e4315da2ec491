#pragma once

#include "sklyanin/types.hpp"

namespace skl {

/// Lattice Λ = Z + Z·tau_lat together with the theta-series truncation threshold.
struct LatticeParam {
  cplx tau_lat{0.31, 1.17};
  double series_tol = 1e-16;

  /// Throws Errc::invalid_lattice unless Im(tau_lat) >= 0.3 and 0 < series_tol < 1e-6.
  void validate() const;
};

}  // namespace skl
