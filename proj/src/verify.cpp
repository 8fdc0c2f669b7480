#include "ellarr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

struct Ctx {
  const VerifyConfig& cfg;
  double bound(double pinned) const { return cfg.tol ? *cfg.tol : pinned; }
  Lattice lattice(Rng& rng) const { return cfg.lattice ? *cfg.lattice : random_generic_lattice(rng); }
  bool non_generic() const { return cfg.lattice && cfg.lattice->is_special(); }
};

TorsionPoint random_exact(std::int64_t n, Rng& rng) {
  auto pts = enumerate_torsion(n, true);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  return pts[pick(rng)];
}

cplx random_z(const Lattice& lat, Rng& rng) { return random_torus_point(lat, rng).z; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CriterionResult upper(int id, double metric, double bound, std::string detail) {
  CriterionResult r;
  r.id = id;
  r.metric = metric;
  r.threshold = bound;
  r.relation = "<=";
  r.pass = metric <= bound;
  r.detail = std::move(detail);
  return r;
}

// ------------------------------------------------------------ 1 and 3

struct SweepItem {
  Lattice lat;
  TorusPoint p;
  TorsionPoint t;
};

std::vector<SweepItem> translate_sweep(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 1);
  std::vector<SweepItem> out;
  for (int l = 0; l < 50; ++l) {
    Lattice lat = ctx.lattice(rng);
    TorusPoint p = random_torus_point(lat, rng);
    for (std::int64_t n = 2; n <= 8; ++n) {
      TorsionPoint t = random_exact(n, rng);
      if (ctx.cfg.n && n != *ctx.cfg.n) continue;
      out.push_back({lat, p, t});
    }
  }
  return out;
}

CriterionResult c1_translate_sum(const Ctx& ctx) {
  Rng zr = make_rng(ctx.cfg.seed, 101);
  double worst = 0;
  std::int64_t evals = 0;
  const auto sweep = translate_sweep(ctx);
  for (const auto& it : sweep) {
    BFunction f = construct_b(it.p, it.t, it.lat, ctx.cfg.policy);
    for (int k = 0; k < 20;) {
      cplx z = random_z(it.lat, zr);
      try {
        worst = std::max(worst, std::abs(translate_sum(f, z)));
        ++k;
        ++evals;
      } catch (const PoleProximity&) {
      }
    }
  }
  auto r = upper(1, worst, ctx.bound(1e-8),
                 std::to_string(sweep.size()) + " functions, " + std::to_string(evals) + " sums");
  r.data = {{"functions", sweep.size()}, {"evaluations", evals}};
  return r;
}

CriterionResult c3_zero_structure(const Ctx& ctx) {
  double worst = 0;
  std::int64_t failures = 0, ok = 0;
  std::vector<std::string> failed;
  for (const auto& it : translate_sweep(ctx)) {
    try {
      BFunction f = construct_b(it.p, it.t, it.lat, ctx.cfg.policy);
      ZeroPair z = find_zeros(f);  // throws unless the count is 2
      worst = std::max(worst, abel_residual(f, z));
      ++ok;
    } catch (const NumericFailure& e) {
      ++failures;
      failed.push_back(it.t.to_string() + ": " + e.what());
    }
  }
  auto r = upper(3, worst, ctx.bound(1e-8),
                 std::to_string(ok) + " functions with 2 zeros, " + std::to_string(failures) + " count failures");
  r.pass = r.pass && failures == 0;
  r.data = {{"functions", ok}, {"count_failures", failures}, {"failures", failed}};
  return r;
}

// ---------------------------------------------------------------- 2

CriterionResult c2_level_amplification(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 2);
  const std::vector<std::pair<std::int64_t, std::int64_t>> cases{{2, 4}, {2, 6}, {3, 6}, {4, 8}};
  double worst = 0;
  int checks = 0;
  for (int l = 0; l < 10; ++l) {
    Lattice lat = ctx.lattice(rng);
    TorusPoint p = random_torus_point(lat, rng);
    for (auto [n, m] : cases) {
      BFunction f = construct_b(p, random_exact(n, rng), lat, ctx.cfg.policy);
      for (int k = 0; k < 3;) {
        cplx z = random_z(lat, rng);
        try {
          cplx lhs = full_level_sum(f, z, m);
          cplx rhs = static_cast<double>(m * m) / static_cast<double>(n) * translate_sum(f, z);
          worst = std::max(worst, std::abs(lhs - rhs));
          ++k;
          ++checks;
        } catch (const PoleProximity&) {
        }
      }
    }
  }
  auto r = upper(2, worst, ctx.bound(1e-7), std::to_string(checks) + " comparisons over (n,m) in {(2,4),(2,6),(3,6),(4,8)}");
  r.data = {{"comparisons", checks}};
  return r;
}

// ---------------------------------------------------------------- 4

CriterionResult c4_two_torsion_law(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 4);
  const auto two = enumerate_torsion(2, true);
  double worst = 0;
  int special = 0, functions = 0;
  std::int64_t failures = 0;
  for (int l = 0; l < 100; ++l) {
    Lattice lat = ctx.cfg.lattice ? *ctx.cfg.lattice
                  : l == 0        ? Lattice::square()
                  : l == 1        ? Lattice::hexagonal()
                                  : random_generic_lattice(rng);
    special += lat.is_special();
    TorusPoint p = random_torus_point(lat, rng);
    for (const auto& t : two) {
      std::vector<cplx> expect;
      for (const auto& s : two)
        if (!(s == t)) expect.push_back(p.z - s.lift(lat));
      try {
        ZeroPair z = find_zeros(construct_b(p, t, lat, ctx.cfg.policy));
        double d1 = std::max(torus_distance(z.q1, expect[0], lat), torus_distance(z.q2, expect[1], lat));
        double d2 = std::max(torus_distance(z.q1, expect[1], lat), torus_distance(z.q2, expect[0], lat));
        worst = std::max(worst, std::min(d1, d2));
      } catch (const NumericFailure&) {
        ++failures;
        worst = kInf;
      }
      ++functions;
    }
  }
  auto r = upper(4, worst, ctx.bound(1e-8),
                 std::to_string(functions) + " functions on 100 lattices (" + std::to_string(special) + " special)");
  r.pass = r.pass && failures == 0;
  r.data = {{"functions", functions}, {"special_lattices", special}, {"failures", failures}};
  return r;
}

// ---------------------------------------------------------------- 5

CriterionResult c5_no_double_zero(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 5);
  double worst = kInf;
  std::int64_t failures = 0, checks = 0;
  for (int l = 0; l < 100; ++l) {
    Lattice lat = ctx.lattice(rng);
    TorusPoint p = random_torus_point(lat, rng);
    for (std::int64_t n = 2; n <= 6; ++n) {
      BFunction f = construct_b(p, random_exact(n, rng), lat, ctx.cfg.policy);
      DoubleZeroReport rep = check_no_double_zero(f);
      checks += static_cast<std::int64_t>(rep.etas.size());
      worst = std::min(worst, rep.min_magnitude);
      if (rep.min_magnitude < 1e-4) ++failures;
    }
  }
  CriterionResult r;
  r.id = 5;
  r.metric = worst;
  r.threshold = 1e-4;
  r.relation = ">=";
  r.pass = failures == 0 && worst >= 1e-4;
  r.detail = std::to_string(checks) + " half-points, " + std::to_string(failures) + " below margin";
  r.data = {{"evaluations", checks}, {"failures", failures}};
  return r;
}

// ---------------------------------------------------------------- 6

CriterionResult c6_pairwise_disjointness(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 6);
  const double tol = ctx.bound(1e-6);
  std::vector<TorsionPoint> taus;
  for (std::int64_t n = 2; n <= 6; ++n)
    for (const auto& t : enumerate_torsion(n, true)) taus.push_back(t);

  double worst_shared = 0;           // deviation of (2,2) shared points from p - tau3
  double min_disjoint = kInf;        // closest approach among pairs expected to be disjoint
  std::int64_t pairs = 0, two_two = 0, violations = 0, triples = 0, zero_failures = 0;
  std::int64_t six_pairs = 0, six_shared = 0;
  double six_min_distance = kInf;
  std::vector<std::string> notes;

  for (int l = 0; l < 20; ++l) {
    Lattice lat = ctx.lattice(rng);
    TorusPoint p = random_torus_point(lat, rng);
    std::vector<BFunction> fs;
    std::vector<ZeroPair> zs;
    bool ok = true;
    for (const auto& t : taus) {
      try {
        fs.push_back(construct_b(p, t, lat, ctx.cfg.policy));
        zs.push_back(find_zeros(fs.back()));
      } catch (const NumericFailure& e) {
        ++zero_failures;
        notes.push_back(t.to_string() + ": " + e.what());
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    for (std::size_t i = 0; i < taus.size(); ++i)
      for (std::size_t j = i + 1; j < taus.size(); ++j) {
        ++pairs;
        ZeroIntersection x = zero_intersection(fs[i], zs[i], fs[j], zs[j], tol);
        int close = 0;
        for (cplx a : {zs[i].q1, zs[i].q2})
          for (cplx b : {zs[j].q1, zs[j].q2}) close += torus_distance(a, b, lat) <= tol;
        PairClass pc = classify_pair(taus[i], taus[j]);
        if (pc.kind == PairClass::Kind::TwoTwo) {
          ++two_two;
          const cplx expect = p.z - (taus[i] + taus[j]).lift(lat);
          double dev = x.shared ? torus_distance(*x.shared, expect, lat) : kInf;
          worst_shared = std::max(worst_shared, dev);
          if (close != 1 || dev > tol) ++violations;
        } else if (pc.kind == PairClass::Kind::SixSix) {
          ++six_pairs;
          six_shared += x.kind == ZeroIntersection::Kind::SharedPoint;
          six_min_distance = std::min(six_min_distance, x.min_distance);
        } else {
          min_disjoint = std::min(min_disjoint, x.min_distance);
          if (x.kind != ZeroIntersection::Kind::Disjoint) {
            ++violations;
            if (notes.size() < 10) notes.push_back("shared zero for " + taus[i].to_string() + " and " + taus[j].to_string());
          }
        }
      }

    // No point is a zero of three different functions.
    std::vector<std::pair<cplx, std::size_t>> pool;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      pool.push_back({zs[i].q1, i});
      pool.push_back({zs[i].q2, i});
    }
    for (std::size_t a = 0; a < pool.size(); ++a) {
      std::vector<std::size_t> owners{pool[a].second};
      for (std::size_t b = 0; b < pool.size(); ++b)
        if (torus_distance(pool[a].first, pool[b].first, lat) <= tol &&
            std::find(owners.begin(), owners.end(), pool[b].second) == owners.end())
          owners.push_back(pool[b].second);
      if (owners.size() >= 3) ++triples;
    }
  }

  auto r = upper(6, worst_shared, tol,
                 std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations, " +
                     std::to_string(triples) + " triple coincidences; (6,6) shared " + std::to_string(six_shared) +
                     "/" + std::to_string(six_pairs));
  r.pass = r.pass && violations == 0 && triples == 0 && zero_failures == 0 && two_two > 0;
  r.data = {{"pairs", pairs},
            {"two_two_pairs", two_two},
            {"violations", violations},
            {"triple_coincidences", triples},
            {"zero_failures", zero_failures},
            {"min_disjoint_distance", min_disjoint},
            {"six_six_pairs", six_pairs},
            {"six_six_shared", six_shared},
            {"six_six_min_distance", six_min_distance},
            {"notes", notes}};
  return r;
}

// ---------------------------------------------------------------- 7

CriterionResult c7_nodal_fiber_sum(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 7);
  std::uniform_real_distribution<double> rad(0.2, 3.0), ang(0.0, 2.0 * std::numbers::pi);
  double worst = 0;
  int evals = 0;
  for (int n = 2; n <= 12; ++n) {
    if (ctx.cfg.n && n != *ctx.cfg.n) continue;
    for (int k = 0; k < 100;) {
      const double r0 = rad(rng);
      cplx z = std::polar(r0, ang(rng));
      try {
        worst = std::max(worst, std::abs(nodal_fiber_sum(z, n)));
        ++k;
        ++evals;
      } catch (const PoleProximity&) {
      }
    }
  }
  auto r = upper(7, worst, ctx.bound(1e-10), std::to_string(evals) + " sums");
  r.data = {{"evaluations", evals}};
  return r;
}

// ---------------------------------------------------------------- 8

CriterionResult c8_monodromy(const Ctx& ctx) {
  json levels = json::array();
  bool pass = true;
  for (std::int64_t n = 2; n <= 8; ++n) {
    if (ctx.cfg.n && n != *ctx.cfg.n) continue;
    std::int64_t brute = 0;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        for (std::int64_t c = 0; c < n; ++c)
          for (std::int64_t d = 0; d < n; ++d) brute += ((a * d - b * c) % n + n) % n == 1 % n;
    const std::vector<TorsionPoint> deltas{TorsionPoint(1, 0, n), TorsionPoint(0, 1, n)};
    const auto group = generated_subgroup(transvections(deltas, n), 12);
    const auto orbits = orbit_on_exact_order(deltas, n, 12);
    const bool ok = brute == sl2_order(n) && group.order() == sl2_order(n) && orbits.size() == 1 &&
                    static_cast<std::int64_t>(orbits[0].size()) == exact_order_count(n);
    pass = pass && ok;
    levels.push_back({{"n", n},
                      {"brute_force", brute},
                      {"formula", sl2_order(n)},
                      {"generated", group.order()},
                      {"orbits", orbits.size()},
                      {"orbit_size", orbits.empty() ? 0 : orbits[0].size()},
                      {"exact_order_count", exact_order_count(n)},
                      {"ok", ok}});
  }
  CriterionResult r;
  r.id = 8;
  r.pass = pass;
  r.metric = pass ? 0 : 1;
  r.relation = "==";
  r.detail = "group orders, surjectivity and orbit sizes for n <= 8";
  r.data = {{"levels", levels}};
  return r;
}

// ---------------------------------------------------------------- 9

CriterionResult c9_lemmas(const Ctx&) {
  json lem = json::array();
  bool pass = true;
  for (std::int64_t n : {4, 12, 20}) {
    Lem5Report rep = lem5_exhaustive(n);
    pass = pass && rep.holds() && rep.pairs > 0;
    lem.push_back({{"n", n}, {"pairs", rep.pairs}, {"instances", rep.instances}, {"holds", rep.holds()},
                   {"counterexample", rep.counterexample ? json(*rep.counterexample) : json(nullptr)}});
  }
  TripleExclusionReport tx = triple_exclusion_exhaustive(6);
  pass = pass && tx.sixsix_triples == 0 && tx.shared_points_distinct;
  CriterionResult r;
  r.id = 9;
  r.pass = pass;
  r.metric = static_cast<double>(tx.sixsix_triples);
  r.threshold = 0;
  r.relation = "==";
  r.detail = "lem5 at n = 4, 12, 20; " + std::to_string(tx.sixsix_triples) + " (6,6,6) triples among " +
             std::to_string(tx.sixsix_pairs) + " (6,6) pairs";
  r.data = {{"lem5", lem},
            {"triple_exclusion",
             {{"sixsix_pairs", tx.sixsix_pairs},
              {"sixsix_triples", tx.sixsix_triples},
              {"triples_scanned", tx.triples_scanned},
              {"two_torsion_shared_distinct", tx.shared_points_distinct}}}};
  return r;
}

// ---------------------------------------------------------------- 10

CriterionResult c10_dichotomy(const Ctx& ctx) {
  bool pass = true;
  std::int64_t runs = 0, mismatches = 0, unclassified = 0;
  json per_m = json::array();
  bool two_torsion_counts = true;
  for (std::int64_t m : {2, 3, 4, 5, 6, 8}) {
    DichotomyExperiment ex = dichotomy_experiment(m, 5, ctx.cfg.seed * 1000 + static_cast<std::uint64_t>(m),
                                                  ctx.cfg.policy, ctx.cfg.lattice);
    runs += static_cast<std::int64_t>(ex.runs.size());
    mismatches += ex.mismatches();
    unclassified += ex.unclassified();
    json types = json::array();
    for (const auto& t : subgroup_types(m)) {
      std::int64_t nodes = -1, trip = -1;
      bool uniform = true;
      for (const auto& run : ex.runs) {
        if (run.type.a != t.a || run.type.b != t.b) continue;
        if (nodes >= 0 && (nodes != run.total_nodes || trip != run.total_triples)) uniform = false;
        nodes = run.total_nodes;
        trip = run.total_triples;
      }
      if (t.a == 2 && t.b == 2) two_torsion_counts = uniform && nodes == 0 && trip == 4;
      types.push_back({{"type", t.to_string()}, {"nodes", nodes}, {"triples", trip}, {"uniform", uniform}});
    }
    per_m.push_back({{"m", m}, {"prediction", to_string(ex.prediction)}, {"types", types},
                     {"mismatches", ex.mismatches()}, {"unclassified", ex.unclassified()}});
  }
  pass = mismatches == 0 && unclassified == 0 && two_torsion_counts;
  CriterionResult r;
  r.id = 10;
  r.pass = pass;
  r.metric = static_cast<double>(mismatches + unclassified);
  r.threshold = 0;
  r.relation = "==";
  r.detail = std::to_string(runs) + " arrangements, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(unclassified) + " unclassified; J(E)_2 gives 4 triples and 0 nodes: " +
             (two_torsion_counts ? "yes" : "no");
  r.data = {{"runs", runs}, {"per_m", per_m}};
  return r;
}

// ---------------------------------------------------------------- 11

CriterionResult c11_uniqueness(const Ctx& ctx) {
  Rng rng = make_rng(ctx.cfg.seed, 11);
  std::uniform_int_distribution<std::int64_t> order(2, 8);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Lattice lat = ctx.lattice(rng);
    TorusPoint p = random_torus_point(lat, rng);
    TorsionPoint t = random_exact(order(rng), rng);
    BFunction f = construct_b(p, t, lat, ctx.cfg.policy);
    PoleSpaceB g(p, t, lat, ctx.cfg.policy);
    auto [p0, p1] = f.poles();
    std::vector<cplx> ratios;
    while (ratios.size() < 10) {
      cplx z = random_z(lat, rng);
      if (torus_distance(z, p0, lat) < 0.05 || torus_distance(z, p1, lat) < 0.05) continue;
      cplx gz = g(z);
      if (std::abs(gz) < 1e-3) continue;
      ratios.push_back(f(z) / gz);
    }
    for (cplx q : ratios) worst = std::max(worst, std::abs(q - ratios[0]) / std::abs(ratios[0]));
  }
  return upper(11, worst, ctx.bound(1e-8), "20 (lattice, p, tau) triples, 10 points each");
}

struct Entry {
  int id;
  const char* name;
  std::function<CriterionResult(const Ctx&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {1, "translate-sum", c1_translate_sum},
      {2, "level-amplification", c2_level_amplification},
      {3, "zero-structure", c3_zero_structure},
      {4, "two-torsion-law", c4_two_torsion_law},
      {5, "no-double-zero", c5_no_double_zero},
      {6, "pairwise-disjointness", c6_pairwise_disjointness},
      {7, "nodal-fiber-sum", c7_nodal_fiber_sum},
      {8, "monodromy", c8_monodromy},
      {9, "lemma-exhaustives", c9_lemmas},
      {10, "arrangement-dichotomy", c10_dichotomy},
      {11, "uniqueness", c11_uniqueness},
  };
  return e;
}

bool selected(const VerifyConfig& cfg, int id, const std::string& name) {
  if (!cfg.only) return true;
  return *cfg.only == name || *cfg.only == std::to_string(id);
}

std::vector<CriterionResult> run_numbered(const VerifyConfig& cfg, bool all) {
  Ctx ctx{cfg};
  std::vector<CriterionResult> out;
  for (const auto& e : entries()) {
    if (!all && !selected(cfg, e.id, e.name)) continue;
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = e.run(ctx);
    } catch (const Error& err) {
      r.id = e.id;
      r.pass = false;
      r.metric = kInf;
      r.detail = std::string("error: ") + err.what();
    }
    r.id = e.id;
    r.name = e.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

json results_json(const std::vector<CriterionResult>& rs) {
  json arr = json::array();
  for (const auto& r : rs)
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"metric", r.metric},
                   {"threshold", r.threshold},
                   {"relation", r.relation},
                   {"detail", r.detail},
                   {"data", r.data.is_null() ? json::object() : r.data}});
  return arr;
}

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : entries()) v.push_back(e.name);
    v.push_back("determinism");
    return v;
  }();
  return names;
}

double criterion_time_limit(int id) {
  switch (id) {
    case 1: return 10;
    case 2: return 20;
    case 6: return 300;
    case 7: return 1;
    case 8: return 30;
    case 9: return 30;
    case 10: return 120;
    default: return 0;
  }
}

bool VerifyReport::all_pass() const {
  return !results.empty() &&
         std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

json VerifyReport::to_json() const {
  json cfg = {{"seed", config.seed},
              {"only", config.only ? json(*config.only) : json(nullptr)},
              {"n", config.n ? json(*config.n) : json(nullptr)},
              {"tolerance_override", config.tol ? json(*config.tol) : json(nullptr)},
              {"lattice", config.lattice ? ellarr::to_json(*config.lattice) : json("random")}};
  return {{"config", cfg}, {"criteria", results_json(results)}, {"all_pass", all_pass()}};
}

std::string VerifyReport::to_text() const {
  std::string out;
  for (const auto& r : results) {
    char line[512];
    if (r.relation.empty() || r.relation == "==")
      std::snprintf(line, sizeof line, "[%s] %2d %-22s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
    else
      std::snprintf(line, sizeof line, "[%s] %2d %-22s %s %s %s; %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), fmt(r.metric).c_str(), r.relation.c_str(), fmt(r.threshold).c_str(),
                    r.detail.c_str());
    out += line;
  }
  out += "seed " + std::to_string(config.seed) + (config.lattice ? ", lattice " + config.lattice->label() : ", random lattices");
  if (config.lattice && config.lattice->is_special()) out += " (non-generic)";
  if (config.tol) out += ", tolerance override " + fmt(*config.tol);
  out += "\n";
  return out;
}

VerifyReport run_verify(const VerifyConfig& config) {
  if (config.only) {
    const auto& names = criterion_names();
    bool known = false;
    for (std::size_t i = 0; i < names.size(); ++i)
      known = known || *config.only == names[i] || *config.only == std::to_string(i + 1);
    if (!known) throw InvalidArgument("unknown criterion '" + *config.only + "'");
  }
  VerifyReport rep;
  rep.config = config;
  const bool determinism = !config.only || *config.only == "determinism" || *config.only == "12";
  const bool full = determinism;
  rep.results = run_numbered(config, full);
  if (determinism) {
    auto t0 = std::chrono::steady_clock::now();
    const std::string first = dump_json(results_json(rep.results));
    const std::string second = dump_json(results_json(run_numbered(config, true)));
    CriterionResult r;
    r.id = 12;
    r.name = "determinism";
    r.pass = first == second;
    r.metric = r.pass ? 0 : 1;
    r.relation = "==";
    r.detail = "second run of criteria 1-11 " + std::string(r.pass ? "byte-identical" : "differs") + " (" +
               std::to_string(first.size()) + " bytes)";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.results.push_back(std::move(r));
    if (config.only) {
      // only the determinism line was asked for
      rep.results.erase(rep.results.begin(), rep.results.end() - 1);
    }
  }
  return rep;
}

}  // namespace ellarr
