#pragma once

// Jacobi theta_1 and the Weierstrass functions of a normalized lattice,
// evaluated through q-series after reduction to the central parallelogram.

#include "ellarr/numeric_policy.hpp"
#include "ellarr/torus.hpp"

namespace ellarr {

/// theta_1(w, q) = 2 sum_{k>=0} (-1)^k q^{(k+1/2)^2} sin((2k+1) w), with
/// q^{1/4} taken on the principal branch. Requires |q| < 0.999.
cplx theta1(cplx w, cplx q, const NumericPolicy& policy = {});

/// The normalized sums S_j(w) = sum_k (-1)^k q^{k(k+1)} (2k+1)^j sin^{(j)}((2k+1) w),
/// j = 0..3, so that theta_1^{(j)}(w) = 2 q^{1/4} S_j(w).
struct ThetaSums {
  cplx s0, s1, s2, s3;
  int terms = 0;
};
ThetaSums theta1_sums(cplx w, cplx q, const NumericPolicy& policy = {});

/// Increments of zeta under translation by the two periods. With the
/// theta_1 convention used here, eta1 * omega2 - eta2 * omega1 = 2 pi i.
struct QuasiPeriods {
  cplx eta1;
  cplx eta2;
};

/// Precomputed per-lattice data for zeta, wp and wp'. Cheap to copy.
class Weierstrass {
 public:
  explicit Weierstrass(const Lattice& lat, const NumericPolicy& policy = {});

  const Lattice& lattice() const { return lat_; }
  const QuasiPeriods& quasi_periods() const { return eta_; }
  /// eta(m + k tau) = m eta1 + k eta2
  cplx quasi_increment(double m, double k) const { return m * eta_.eta1 + k * eta_.eta2; }

  cplx zeta(cplx z) const;
  cplx wp(cplx z) const;
  cplx wp_prime(cplx z) const;

 private:
  struct Reduced {
    cplx z0;  // z - m - k tau, central representative
    double m, k;
  };
  Reduced reduce(cplx z) const;
  ThetaSums sums(cplx z0) const;

  Lattice lat_;
  NumericPolicy policy_;
  cplx q_;
  QuasiPeriods eta_;
};

cplx weierstrass_zeta(cplx z, const Lattice& lat, const NumericPolicy& policy = {});
cplx weierstrass_p(cplx z, const Lattice& lat, const NumericPolicy& policy = {});
cplx weierstrass_p_prime(cplx z, const Lattice& lat, const NumericPolicy& policy = {});
QuasiPeriods quasi_periods(const Lattice& lat, const NumericPolicy& policy = {});

}  // namespace ellarr
