#pragma once

// SL2(Z/n), transvections, and exhaustive checks of the torsion
// combinatorics behind the arrangement results.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellarr/torus.hpp"

namespace ellarr {

/// [[a, b], [c, d]] mod n with determinant 1, acting on column vectors.
class ModMatrix {
 public:
  ModMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n);
  static ModMatrix identity(std::int64_t n);

  std::int64_t a() const { return e_[0]; }
  std::int64_t b() const { return e_[1]; }
  std::int64_t c() const { return e_[2]; }
  std::int64_t d() const { return e_[3]; }
  std::int64_t level() const { return n_; }

  std::int64_t det() const;
  ModMatrix inverse() const;
  /// Dense index in [0, n^4); distinct matrices get distinct indices.
  std::int64_t index() const;
  /// Image of a vector of J(E)_n; requires order(v) | n. Result at level n.
  TorsionPoint apply(const TorsionPoint& v) const;

  friend ModMatrix operator*(const ModMatrix& x, const ModMatrix& y);
  friend bool operator==(const ModMatrix& x, const ModMatrix& y) {
    return x.n_ == y.n_ && x.e_[0] == y.e_[0] && x.e_[1] == y.e_[1] && x.e_[2] == y.e_[2] &&
           x.e_[3] == y.e_[3];
  }
  friend bool operator<(const ModMatrix& x, const ModMatrix& y) { return x.index() < y.index(); }

  std::string to_string() const;

 private:
  std::int64_t e_[4];
  std::int64_t n_;
};

/// T(lambda) = lambda + <lambda, delta> delta over Z/n, n = delta.level().
ModMatrix transvection(const TorsionPoint& delta);

/// n^3 prod_{p | n} (1 - 1/p^2).
std::int64_t sl2_order(std::int64_t n);

struct MatrixGroup {
  std::int64_t level = 1;
  std::vector<ModMatrix> elements;  ///< sorted by index()
  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
};

/// Closure of gens under multiplication. Throws InvalidArgument on an empty
/// list or mixed levels, LevelCapExceeded when the level is above cap.
MatrixGroup generated_subgroup(const std::vector<ModMatrix>& gens, std::int64_t cap = 12);

/// Transvections of the given vectors, all read at level n.
std::vector<ModMatrix> transvections(const std::vector<TorsionPoint>& deltas, std::int64_t n);

bool check_surjectivity(const std::vector<TorsionPoint>& deltas, std::int64_t n, std::int64_t cap = 12);

/// Orbits of the group generated by the transvections on vectors of exact
/// order n. Each orbit is sorted; orbits are ordered by their first element.
std::vector<std::vector<TorsionPoint>> orbit_on_exact_order(const std::vector<TorsionPoint>& deltas,
                                                            std::int64_t n, std::int64_t cap = 12);

/// True iff gcd(<lambda, delta_1>, ..., <lambda, delta_k>, n) = 1 for every
/// lambda of exact order n.
bool gcd_pairing_check(const std::vector<TorsionPoint>& deltas, std::int64_t n);

struct Lem5Report {
  std::int64_t n = 0;
  std::int64_t pairs = 0;      ///< ordered pairs of order-n points with pairing n/2
  std::int64_t instances = 0;  ///< (pair, d1, d2) with 4 (d1 a1 - d2 a2) = 0
  std::optional<std::string> counterexample;
  bool holds() const { return !counterexample; }
};

/// For n = 4 mod 8, n <= 36: every pair a1 != a2 of order n with pairing
/// n/2 and all odd d1, d2 with 4 (d1 a1 - d2 a2) = 0 have d1 a1 - d2 a2 of
/// order exactly 2.
Lem5Report lem5_exhaustive(std::int64_t n);

struct PairClass {
  enum class Kind { DisjointExpected, TwoTwo, SixSix } kind = Kind::DisjointExpected;
  std::int64_t n1 = 0, n2 = 0;
  std::int64_t pairing = 0;     ///< at lcm(n1, n2)
  std::int64_t diff_order = 0;  ///< order of t1 - t2
};

PairClass classify_pair(const TorsionPoint& t1, const TorsionPoint& t2);
const char* to_string(PairClass::Kind k);

struct TripleExclusionReport {
  std::int64_t nmax = 0;
  std::int64_t two_torsion_ordered_pairs = 0;
  /// For each unordered pair of distinct 2-torsions, the third one (the
  /// shared zero sits at p minus it).
  std::vector<TorsionPoint> two_torsion_shared;
  bool shared_points_distinct = false;
  std::int64_t sixsix_pairs = 0;    ///< unordered
  std::int64_t sixsix_triples = 0;  ///< triples with all three pairs SixSix
  std::int64_t triples_scanned = 0;
  bool holds() const { return shared_points_distinct && sixsix_triples == 0; }
};

/// Scans all triples of distinct nonzero points of order <= nmax (nmax <= 12).
TripleExclusionReport triple_exclusion_exhaustive(std::int64_t nmax);

enum class Dichotomy { AlwaysNodal, TriplesPossible };
const char* to_string(Dichotomy d);

struct SubgroupType {
  std::int64_t a, b;  ///< Z/a x Z/b with b | a
  bool contains_full_two_torsion() const { return b % 2 == 0; }
  std::string to_string() const;
};

/// Isomorphism types of subgroups of order m in (Q/Z)^2, a descending.
std::vector<SubgroupType> subgroup_types(std::int64_t m);
/// Generators of a concrete subgroup of the given type.
std::vector<TorsionPoint> subgroup_generators(const SubgroupType& t);
Dichotomy dichotomy_for_m(std::int64_t m);

enum class SeveriBranch { DeformationNodal, MainCase, NotApplicable };
const char* to_string(SeveriBranch b);
SeveriBranch severi_branch(std::int64_t m, std::int64_t deg_m);

}  // namespace ellarr
