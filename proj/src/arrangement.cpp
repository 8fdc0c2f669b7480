#include "ellarr/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

struct PooledZero {
  cplx z;
  TorsionPoint tau;
  double margin;
};

// Single linkage under torus distance; the pooled list is tiny.
std::vector<int> link(const std::vector<PooledZero>& pts, const Lattice& lat, double tol) {
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (torus_distance(pts[i].z, pts[j].z, lat) <= tol) {
        int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
        parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<int> root(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) root[i] = find(static_cast<int>(i));
  return root;
}

bool lex_less(cplx a, cplx b, const Lattice& lat) {
  auto [ax, ay] = lat.coords(a);
  auto [bx, by] = lat.coords(b);
  return std::pair(ay, ax) < std::pair(by, bx);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NormalCrossings: return "NormalCrossings";
    case Verdict::NodesAndTriples: return "NodesAndTriples";
    default: return "Unclassified";
  }
}

std::vector<ZeroLocusEntry> zero_locus_table(const std::vector<TorsionPoint>& A, TorusPoint p, const Lattice& lat,
                                             const NumericPolicy& policy) {
  if (A.size() < 2) throw InvalidArgument("zero_locus_table: the subgroup must have at least 2 elements");
  std::vector<TorsionPoint> taus;
  for (const auto& t : A)
    if (!t.is_zero()) taus.push_back(t.canonical());
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  std::vector<ZeroLocusEntry> out;
  for (const auto& t : taus) {
    try {
      BFunction f = construct_b(p, t, lat, policy);
      out.push_back({t, find_zeros(f)});
    } catch (const NumericFailure& e) {
      throw NumericFailure("tau = " + t.to_string() + ": " + e.what());
    }
  }
  return out;
}

ArrangementReport classify_arrangement(const std::vector<TorsionPoint>& A, TorusPoint p, const Lattice& lat,
                                       const NumericPolicy& policy) {
  ArrangementReport rep;
  rep.lattice = lat;
  rep.p = reduce_to_fundamental(p.z, lat).z;
  for (const auto& t : A) rep.subgroup.push_back(t.canonical());
  std::sort(rep.subgroup.begin(), rep.subgroup.end());
  rep.subgroup.erase(std::unique(rep.subgroup.begin(), rep.subgroup.end()), rep.subgroup.end());
  rep.non_generic = lat.is_special();
  {
    int twos = 0;
    for (const auto& t : rep.subgroup) twos += t.order() == 2;
    rep.contains_two_torsion = twos == 3;
  }

  const auto table = zero_locus_table(rep.subgroup, TorusPoint{rep.p}, lat, policy);
  std::vector<PooledZero> pool;
  for (const auto& e : table) {
    if (e.zeros.double_zero) rep.issues.push_back("double zero of b for tau = " + e.tau.to_string());
    pool.push_back({reduce_to_fundamental(e.zeros.q1, lat).z, e.tau, e.zeros.deriv1});
    pool.push_back({reduce_to_fundamental(e.zeros.q2, lat).z, e.tau, e.zeros.deriv2});
  }
  std::sort(pool.begin(), pool.end(), [&](const PooledZero& a, const PooledZero& b) { return lex_less(a.z, b.z, lat); });

  const double tol = policy.cluster_tol;
  const std::vector<int> root = link(pool, lat, tol);

  rep.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      if (root[i] != root[j]) rep.min_separation = std::min(rep.min_separation, torus_distance(pool[i].z, pool[j].z, lat));
  if (rep.min_separation < policy.distinct_factor * tol)
    rep.issues.push_back("zeros in different clusters only " + std::to_string(rep.min_separation) + " apart");

  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (root[i] != static_cast<int>(i)) continue;
    Cluster c;
    const cplx base = pool[i].z;
    cplx offset = 0;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (root[j] == static_cast<int>(i)) members.push_back(j);
    for (std::size_t j : members) offset += torus_difference(pool[j].z, base, lat);
    c.center = reduce_to_fundamental(base + offset / static_cast<double>(members.size()), lat).z;
    for (std::size_t j : members) {
      c.radius = std::max(c.radius, torus_distance(pool[j].z, c.center, lat));
      c.vanishing.push_back(pool[j].tau);
      c.margins.push_back(pool[j].margin);
      rep.min_margin = std::min(rep.min_margin, pool[j].margin);
    }
    // keep margins aligned while sorting by tau
    std::vector<std::size_t> idx(c.vanishing.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return c.vanishing[a] < c.vanishing[b]; });
    std::vector<TorsionPoint> v;
    std::vector<double> mg;
    for (std::size_t k : idx) {
      v.push_back(c.vanishing[k]);
      mg.push_back(c.margins[k]);
    }
    c.vanishing = std::move(v);
    c.margins = std::move(mg);
    if (std::adjacent_find(c.vanishing.begin(), c.vanishing.end()) != c.vanishing.end())
      rep.issues.push_back("a single b vanishes twice at one cluster");
    rep.clusters.push_back(std::move(c));
  }
  std::sort(rep.clusters.begin(), rep.clusters.end(),
            [&](const Cluster& a, const Cluster& b) { return lex_less(a.center, b.center, lat); });
  if (pool.empty()) rep.min_margin = 0;

  // Residues are normalized to +1, so the local scale of |b'| is 1.
  if (rep.min_margin < policy.transversality_min)
    rep.issues.push_back("non-simple zero: min |b'| = " + std::to_string(rep.min_margin));

  for (const auto& c : rep.clusters) {
    if (c.branches() == 2) ++rep.nodes_on_g;
    else if (c.branches() == 3) ++rep.triples_on_g;
    else rep.issues.push_back("cluster with " + std::to_string(c.branches()) + " branches");
  }
  const auto order = static_cast<std::int64_t>(rep.subgroup.size());
  if ((order * rep.nodes_on_g) % 2 != 0 || (order * rep.triples_on_g) % 3 != 0)
    rep.issues.push_back("cluster counts are not compatible with a free action of A");
  rep.total_nodes = order * rep.nodes_on_g / 2;
  rep.total_triples = order * rep.triples_on_g / 3;
  rep.pair_count = rep.total_nodes + 3 * rep.total_triples;
  rep.expected_pairs = order * (order - 1);
  if (rep.issues.empty() && rep.pair_count != rep.expected_pairs)
    rep.issues.push_back("pair count " + std::to_string(rep.pair_count) + " != " + std::to_string(rep.expected_pairs));

  if (!rep.issues.empty()) rep.verdict = Verdict::Unclassified;
  else rep.verdict = rep.triples_on_g > 0 ? Verdict::NodesAndTriples : Verdict::NormalCrossings;
  return rep;
}

Lattice random_generic_lattice(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-0.4, 0.4), im(1.0, 2.0);
  const double x = re(rng);
  const double y = im(rng);
  return Lattice::from_tau({x, y});
}

TorusPoint random_torus_point(const Lattice& lat, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double x = unit(rng);
  const double y = unit(rng);
  return reduce_to_fundamental(lat.point(x, y), lat);
}

std::int64_t DichotomyExperiment::mismatches() const {
  return std::count_if(runs.begin(), runs.end(), [](const DichotomyRun& r) { return !r.matches(); });
}

std::int64_t DichotomyExperiment::unclassified() const {
  return std::count_if(runs.begin(), runs.end(), [](const DichotomyRun& r) { return r.verdict == Verdict::Unclassified; });
}

DichotomyExperiment dichotomy_experiment(std::int64_t m, int trials, std::uint64_t seed, const NumericPolicy& policy,
                                         const std::optional<Lattice>& fixed_lattice) {
  if (m < 2 || m > 12) throw InvalidArgument("dichotomy_experiment: need 2 <= m <= 12");
  if (trials < 1) throw InvalidArgument("dichotomy_experiment: need at least one trial");
  DichotomyExperiment ex;
  ex.m = m;
  ex.trials = trials;
  ex.seed = seed;
  ex.prediction = dichotomy_for_m(m);
  std::mt19937_64 rng(seed);
  for (const auto& type : subgroup_types(m)) {
    const auto A = subgroup_from_generators(subgroup_generators(type));
    for (int k = 0; k < trials; ++k) {
      DichotomyRun run;
      run.type = type;
      run.trial = k;
      Lattice lat = fixed_lattice ? *fixed_lattice : random_generic_lattice(rng);
      TorusPoint p = random_torus_point(lat, rng);
      run.tau_lat = lat.tau();
      run.p = p.z;
      run.expected = type.contains_full_two_torsion() ? Verdict::NodesAndTriples : Verdict::NormalCrossings;
      try {
        ArrangementReport rep = classify_arrangement(A, p, lat, policy);
        run.verdict = rep.verdict;
        run.total_nodes = rep.total_nodes;
        run.total_triples = rep.total_triples;
        run.issues = rep.issues;
      } catch (const NumericFailure& e) {
        run.verdict = Verdict::Unclassified;
        run.issues.push_back(e.what());
      }
      ex.runs.push_back(std::move(run));
    }
  }
  return ex;
}

}  // namespace ellarr
