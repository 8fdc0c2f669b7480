#pragma once

#include <random>

#include "ellarr/arrangement.hpp"

namespace testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline ellarr::cplx random_point(const ellarr::Lattice& lat, std::mt19937_64& g) {
  return lat.point(uniform(g, 0, 1), uniform(g, 0, 1));
}

}  // namespace testing
