#pragma once

// Singularities of the union of the translates sigma(G), sigma in A, read
// off from coincidences among the zero sets of b_{tau,p}, tau in A \ 0.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ellarr/bfunc.hpp"
#include "ellarr/torsion_group.hpp"

namespace ellarr {

struct ZeroLocusEntry {
  TorsionPoint tau;
  ZeroPair zeros;
};

/// One entry per nonzero tau of A, in A's sorted order. A numeric failure
/// is rethrown with the offending tau in the message.
std::vector<ZeroLocusEntry> zero_locus_table(const std::vector<TorsionPoint>& A, TorusPoint p, const Lattice& lat,
                                             const NumericPolicy& policy = {});

enum class Verdict { NormalCrossings, NodesAndTriples, Unclassified };
const char* to_string(Verdict v);

struct Cluster {
  cplx center;                       ///< reduced to the fundamental parallelogram
  std::vector<TorsionPoint> vanishing;  ///< S(q), sorted
  std::vector<double> margins;       ///< |b_tau'(q)|, aligned with vanishing
  double radius = 0;                 ///< largest distance of a member zero from the center
  int branches() const { return 1 + static_cast<int>(vanishing.size()); }
};

struct ArrangementReport {
  Lattice lattice = Lattice::square();
  cplx p;
  std::vector<TorsionPoint> subgroup;  ///< all of A, sorted
  std::vector<Cluster> clusters;       ///< sorted by center
  std::int64_t nodes_on_g = 0, triples_on_g = 0;
  std::int64_t total_nodes = 0, total_triples = 0;
  std::int64_t pair_count = 0;     ///< sum of C(r,2) times the full-arrangement multiplicity
  std::int64_t expected_pairs = 0;  ///< C(|A|,2) * 2
  double min_margin = 0;
  double min_separation = 0;  ///< smallest distance between zeros in different clusters
  bool contains_two_torsion = false;  ///< J(E)_2 is a subgroup of A
  bool non_generic = false;
  Verdict verdict = Verdict::Unclassified;
  std::vector<std::string> issues;  ///< reasons for Unclassified
};

/// Requires |A| >= 2. Tolerances come from the policy (cluster_tol,
/// distinct_factor, transversality_min).
ArrangementReport classify_arrangement(const std::vector<TorsionPoint>& A, TorusPoint p, const Lattice& lat,
                                       const NumericPolicy& policy = {});

/// tau uniform in Re [-0.4, 0.4], Im [1, 2].
Lattice random_generic_lattice(std::mt19937_64& rng);
/// Uniform in the fundamental parallelogram.
TorusPoint random_torus_point(const Lattice& lat, std::mt19937_64& rng);

struct DichotomyRun {
  SubgroupType type;
  int trial = 0;
  cplx tau_lat, p;
  Verdict expected = Verdict::Unclassified, verdict = Verdict::Unclassified;
  std::int64_t total_nodes = 0, total_triples = 0;
  std::vector<std::string> issues;
  bool matches() const { return verdict == expected; }
};

struct DichotomyExperiment {
  std::int64_t m = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  Dichotomy prediction = Dichotomy::AlwaysNodal;
  std::vector<DichotomyRun> runs;
  std::int64_t mismatches() const;
  std::int64_t unclassified() const;
};

/// With fixed_lattice set, every trial uses it and only p is random.
DichotomyExperiment dichotomy_experiment(std::int64_t m, int trials, std::uint64_t seed,
                                         const NumericPolicy& policy = {},
                                         const std::optional<Lattice>& fixed_lattice = std::nullopt);

}  // namespace ellarr
