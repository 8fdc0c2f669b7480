#pragma once

#include <cstdint>

namespace ellarr {

/// Every numerical tolerance used by the library, in one place. The
/// defaults are the working values; any call taking a policy may be given
/// a modified copy.
struct NumericPolicy {
  // theta / Weierstrass
  double series_rel_eps = 1e-16;  ///< stop a q-series once the term bound falls below this fraction
  int series_max_terms = 200;
  double pole_guard = 1e-9;  ///< minimum distance to a pole for point evaluation

  // b-functions
  double translate_pole_guard = 1e-7;  ///< minimum distance of any translate z + k tau to a pole
  double translate_sum_check = 1e-9;   ///< construction-time verification of the zero translate sum
  double zero_residual = 1e-11;        ///< |b(q)| required after refinement
  double double_zero_cluster = 1e-7;   ///< two zeros closer than this are one double zero
  double contour_guard = 1e-6;         ///< jitter the grid if a pole lies this close to a cell edge
  int zero_grid_cells = 16;            ///< coarse subdivision per lattice direction
  double no_double_zero_threshold = 1e-6;
  std::uint64_t jitter_seed = 0x5eed'0fb1ULL;

  // arrangements
  double cluster_tol = 1e-6;         ///< pooled zeros within this torus distance coincide
  double distinct_factor = 100.0;    ///< distinct clusters must be at least factor * cluster_tol apart
  double transversality_min = 1e-6;  ///< minimum |b'| at a zero, relative to the residue scale
};

}  // namespace ellarr
