#include "ellarr/theta.hpp"

#include <cmath>
#include <numbers>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTinyAbs = 1e-290;

}  // namespace

ThetaSums theta1_sums(cplx w, cplx q, const NumericPolicy& policy) {
  const double aq = std::abs(q);
  if (!(aq < 0.999)) throw InvalidArgument("theta1: nome must satisfy |q| < 0.999");
  const double grow = std::exp(std::abs(w.imag()));  // bound on |sin|, |cos| growth per unit frequency

  ThetaSums out{};
  cplx qpow = 1.0;       // q^{k(k+1)}
  double qabs = 1.0;     // |q|^{k(k+1)}
  double growk = grow;   // exp((2k+1)|Im w|)
  double sign = 1.0;
  const cplx q2 = q * q;
  cplx step = q2;  // q^{2(k+1)}
  double astep = aq * aq;
  for (int k = 0; k < policy.series_max_terms; ++k) {
    const double f = 2.0 * k + 1.0;
    const cplx x = f * w;
    const cplx s = std::sin(x), c = std::cos(x);
    const cplx base = sign * qpow;
    out.s0 += base * s;
    out.s1 += base * f * c;
    out.s2 -= base * (f * f) * s;
    out.s3 -= base * (f * f * f) * c;
    out.terms = k + 1;

    // Bound on the k-th terms of each sum; later terms shrink faster than
    // geometrically once k >= 1, so this also bounds the tail.
    const double b0 = qabs * growk;
    const bool done = b0 <= policy.series_rel_eps * std::max(std::abs(out.s0), kTinyAbs) &&
                      b0 * f <= policy.series_rel_eps * std::max(std::abs(out.s1), kTinyAbs) &&
                      b0 * f * f <= policy.series_rel_eps * std::max(std::abs(out.s2), kTinyAbs) &&
                      b0 * f * f * f <= policy.series_rel_eps * std::max(std::abs(out.s3), kTinyAbs);
    if (done && k >= 1) return out;

    // advance q^{k(k+1)} -> q^{(k+1)(k+2)}
    qpow *= step;
    qabs *= astep;
    step *= q2;
    astep *= aq * aq;
    growk *= grow * grow;
    sign = -sign;
    if (qabs * growk == 0.0) return out;
  }
  throw NumericFailure("theta1: series did not converge within the term cap");
}

cplx theta1(cplx w, cplx q, const NumericPolicy& policy) {
  ThetaSums s = theta1_sums(w, q, policy);
  return 2.0 * std::pow(q, 0.25) * s.s0;
}

Weierstrass::Weierstrass(const Lattice& lat, const NumericPolicy& policy)
    : lat_(lat), policy_(policy), q_(std::exp(cplx(0, kPi) * lat.tau())) {
  ThetaSums at0 = theta1_sums(0.0, q_, policy_);
  eta_.eta1 = -(kPi * kPi / 3.0) * at0.s3 / at0.s1;
  eta_.eta2 = eta_.eta1 * lat_.tau() - cplx(0, 2.0 * kPi);
}

Weierstrass::Reduced Weierstrass::reduce(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgument("Weierstrass functions need a finite argument");
  auto [x, y] = lat_.coords(z);
  double m = std::round(x), k = std::round(y);
  cplx z0 = z - lat_.point(m, k);
  if (torus_distance(z0, 0.0, lat_) < policy_.pole_guard)
    throw PoleProximity("Weierstrass function evaluated within the pole guard of a lattice point");
  return {z0, m, k};
}

ThetaSums Weierstrass::sums(cplx z0) const { return theta1_sums(kPi * z0, q_, policy_); }

cplx Weierstrass::zeta(cplx z) const {
  Reduced r = reduce(z);
  ThetaSums s = sums(r.z0);
  return eta_.eta1 * r.z0 + kPi * s.s1 / s.s0 + quasi_increment(r.m, r.k);
}

cplx Weierstrass::wp(cplx z) const {
  Reduced r = reduce(z);
  ThetaSums s = sums(r.z0);
  cplx l = s.s1 / s.s0;
  return -eta_.eta1 - kPi * kPi * (s.s2 / s.s0 - l * l);
}

cplx Weierstrass::wp_prime(cplx z) const {
  Reduced r = reduce(z);
  ThetaSums s = sums(r.z0);
  cplx l = s.s1 / s.s0;
  return -kPi * kPi * kPi * (s.s3 / s.s0 - 3.0 * l * s.s2 / s.s0 + 2.0 * l * l * l);
}

cplx weierstrass_zeta(cplx z, const Lattice& lat, const NumericPolicy& policy) {
  return Weierstrass(lat, policy).zeta(z);
}

cplx weierstrass_p(cplx z, const Lattice& lat, const NumericPolicy& policy) {
  return Weierstrass(lat, policy).wp(z);
}

cplx weierstrass_p_prime(cplx z, const Lattice& lat, const NumericPolicy& policy) {
  return Weierstrass(lat, policy).wp_prime(z);
}

QuasiPeriods quasi_periods(const Lattice& lat, const NumericPolicy& policy) {
  return Weierstrass(lat, policy).quasi_periods();
}

}  // namespace ellarr
