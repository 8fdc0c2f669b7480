#pragma once

// Complex tori C/Lambda and their exact torsion subgroups.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ellarr {

using cplx = std::complex<double>;

/// A lattice Z + Z*tau, normalized so that the first period is 1 and tau
/// lies in the standard fundamental domain of SL2(Z):
/// -1/2 <= Re tau < 1/2, |tau| >= 1, and Re tau <= 0 when |tau| = 1.
class Lattice {
 public:
  /// Normalizes an arbitrary period pair (the torus is only defined up to
  /// homothety, so omega1 is scaled to 1 and the ratio is reduced).
  static Lattice from_periods(cplx omega1, cplx omega2, std::string label = {});
  static Lattice from_tau(cplx tau, std::string label = {});

  /// Square lattice tau = i.
  static Lattice square();
  /// Hexagonal lattice tau = exp(2 pi i / 3).
  static Lattice hexagonal();

  cplx omega1() const { return {1.0, 0.0}; }
  cplx omega2() const { return tau_; }
  cplx tau() const { return tau_; }
  const std::string& label() const { return label_; }

  /// Coordinates (x, y) with z = x + y tau.
  std::pair<double, double> coords(cplx z) const;
  cplx point(double x, double y) const { return cplx(x, 0.0) + y * tau_; }

  /// True near the two lattices with extra automorphisms (tau = i,
  /// tau = exp(2 pi i/3)); such lattices are allowed but not generic.
  bool is_special(double tol = 1e-6) const;

 private:
  explicit Lattice(cplx tau, std::string label) : tau_(tau), label_(std::move(label)) {}
  cplx tau_;
  std::string label_;
};

/// Parses "tau=<re>,<im>".
Lattice parse_lattice(std::string_view text);

/// A point of the torus, stored as its representative in the half-open
/// parallelogram [0,1) + [0,1) tau.
struct TorusPoint {
  cplx z;
};

TorusPoint reduce_to_fundamental(cplx z, const Lattice& lat);

/// min over lattice translates of |a - b|.
double torus_distance(cplx a, cplx b, const Lattice& lat);

/// Representative of a - b closest to the origin.
cplx torus_difference(cplx a, cplx b, const Lattice& lat);

/// An element (a/n, b/n) of (Q/Z)^2, identified with J(E)_n once a lattice
/// embeds it as (a + b tau)/n. The level n is part of the value: the
/// pairing depends on it. Equality compares the underlying group elements.
class TorsionPoint {
 public:
  TorsionPoint(std::int64_t a, std::int64_t b, std::int64_t n);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t level() const { return n_; }

  std::int64_t order() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// Same element written at level order().
  TorsionPoint canonical() const;
  /// Same element written at level m; requires order() | m.
  TorsionPoint at_level(std::int64_t m) const;

  TorsionPoint operator-() const;
  friend TorsionPoint operator+(const TorsionPoint& s, const TorsionPoint& t);
  friend TorsionPoint operator-(const TorsionPoint& s, const TorsionPoint& t);
  friend TorsionPoint operator*(std::int64_t k, const TorsionPoint& t);
  friend bool operator==(const TorsionPoint& s, const TorsionPoint& t);
  /// Total order on canonical forms; used for deterministic sorting.
  friend bool operator<(const TorsionPoint& s, const TorsionPoint& t);

  /// (a + b tau)/n with 0 <= a, b < n.
  cplx lift(const Lattice& lat) const;

  /// "a/n,b/n"
  std::string to_string() const;

 private:
  std::int64_t a_, b_, n_;
};

/// Parses "a/n,b/n" (both denominators must agree).
TorsionPoint parse_torsion(std::string_view text);

std::int64_t torsion_order(const TorsionPoint& t);

/// (a1 b2 - a2 b1) mod N with both points written at level N, N = lcm of
/// their levels. Result in [0, N).
std::int64_t pairing(const TorsionPoint& t1, const TorsionPoint& t2);
/// Pairing in J(E)_m; requires both orders to divide m.
std::int64_t pairing_at_level(const TorsionPoint& t1, const TorsionPoint& t2, std::int64_t m);

/// All n^2 elements of J(E)_n in lexicographic (a, b) order, or only those
/// of order exactly n.
std::vector<TorsionPoint> enumerate_torsion(std::int64_t n, bool exact_order = false);

/// n^2 prod_{p | n} (1 - 1/p^2): number of points of exact order n.
std::int64_t exact_order_count(std::int64_t n);

/// Closure of the generators under addition, written at the lcm of their
/// levels and sorted.
std::vector<TorsionPoint> subgroup_from_generators(const std::vector<TorsionPoint>& gens);

/// Distinct primes dividing n, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

}  // namespace ellarr
