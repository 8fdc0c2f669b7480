#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ellarr/errors.hpp"
#include "ellarr/torsion_group.hpp"

using namespace ellarr;

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

// All det-1 matrices mod n by brute force.
std::vector<ModMatrix> all_sl2(std::int64_t n) {
  std::vector<ModMatrix> out;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        for (std::int64_t d = 0; d < n; ++d)
          if (mod(a * d - b * c, n) == 1 % n) out.emplace_back(a, b, c, d, n);
  return out;
}

// Closure by breadth-first search from the identity.
std::size_t closure_size(const std::vector<ModMatrix>& gens) {
  std::set<std::int64_t> seen;
  std::vector<ModMatrix> frontier{ModMatrix::identity(gens[0].level())};
  seen.insert(frontier[0].index());
  while (!frontier.empty()) {
    std::vector<ModMatrix> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        ModMatrix y = g * x;
        if (seen.insert(y.index()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("ModMatrix basics") {
  CHECK_THROWS_AS(ModMatrix(1, 1, 1, 1, 5), InvalidArgument);
  ModMatrix m(2, 1, 1, 1, 7);
  CHECK(m.det() == 1);
  CHECK(m * m.inverse() == ModMatrix::identity(7));
  CHECK(m.inverse() * m == ModMatrix::identity(7));
  ModMatrix x(1, 3, 0, 1, 7), y(1, 0, 5, 1, 7);
  CHECK((m * x) * y == m * (x * y));
  TorsionPoint v = m.apply({1, 0, 7});
  CHECK(v == TorsionPoint(2, 1, 7));
  CHECK(m.apply({1, 2, 7}) == TorsionPoint(4, 3, 7));
}

TEST_CASE("transvection examples") {
  for (std::int64_t n : {2, 3, 5, 12}) {
    ModMatrix t = transvection({1, 0, n});
    CHECK(t.inverse() == ModMatrix(1, 1, 0, 1, n));
  }
  ModMatrix t = transvection({1, 1, 2});
  CHECK_FALSE(t == ModMatrix::identity(2));
  CHECK(t * t == ModMatrix::identity(2));
  CHECK_THROWS_AS(transvection({0, 0, 3}), InvalidArgument);
  CHECK_THROWS_AS(transvection({4, 8, 4}), InvalidArgument);
}

TEST_CASE("transvections act as lambda + <lambda, delta> delta, exhaustive to n = 8") {
  for (std::int64_t n = 2; n <= 8; ++n) {
    const auto pts = enumerate_torsion(n);
    for (const auto& d : pts) {
      if (d.is_zero()) continue;
      ModMatrix t = transvection(d.at_level(n));
      CHECK(t.det() == 1);
      CHECK(t.apply(d) == d);
      bool trivial = true;
      for (const auto& l : pts) {
        TorsionPoint expect = l + pairing_at_level(l, d, n) * d;
        CHECK(t.apply(l) == expect);
        trivial = trivial && (pairing_at_level(l, d, n) * d).is_zero();
      }
      CHECK((t == ModMatrix::identity(n)) == trivial);
    }
  }
}

TEST_CASE("sl2_order matches brute force") {
  CHECK(sl2_order(2) == 6);
  CHECK(sl2_order(4) == 48);
  CHECK(sl2_order(6) == 144);
  for (std::int64_t n = 1; n <= 10; ++n) CHECK(sl2_order(n) == std::int64_t(all_sl2(n).size()));
}

TEST_CASE("generated_subgroup") {
  CHECK(generated_subgroup({ModMatrix::identity(5)}).order() == 1);
  CHECK(generated_subgroup(transvections({{1, 0, 2}, {0, 1, 2}}, 2)).order() == 6);
  CHECK(generated_subgroup(transvections({{1, 0, 4}, {0, 1, 4}}, 4)).order() == 48);
  CHECK_THROWS_AS(generated_subgroup({}), InvalidArgument);
  CHECK_THROWS_AS(generated_subgroup({ModMatrix::identity(2), ModMatrix::identity(3)}), InvalidArgument);
  CHECK_THROWS_AS(generated_subgroup({ModMatrix::identity(13)}), LevelCapExceeded);
  CHECK(generated_subgroup({ModMatrix::identity(13)}, 13).order() == 1);

  const std::vector<std::vector<TorsionPoint>> configs{
      {{1, 0, 1}}, {{1, 1, 1}}, {{2, 0, 1}, {0, 2, 1}}, {{1, 0, 1}, {1, 2, 1}}, {{1, 0, 1}, {0, 1, 1}}};
  for (std::int64_t n = 2; n <= 8; ++n)
    for (const auto& cfg : configs) {
      std::vector<TorsionPoint> ds;
      for (const auto& d : cfg) {
        TorsionPoint v(d.a(), d.b(), n);
        if (!v.is_zero()) ds.push_back(v);
      }
      if (ds.empty()) continue;
      auto gens = transvections(ds, n);
      MatrixGroup g = generated_subgroup(gens);
      CHECK(g.order() == std::int64_t(closure_size(gens)));
      CHECK(sl2_order(n) % g.order() == 0);
      for (std::size_t i = 1; i < g.elements.size(); ++i) CHECK(g.elements[i - 1] < g.elements[i]);
    }
}

TEST_CASE("surjectivity examples") {
  CHECK(check_surjectivity({{1, 0, 5}, {0, 1, 5}}, 5));
  CHECK_FALSE(check_surjectivity({{2, 0, 4}, {0, 2, 4}}, 4));
  CHECK_FALSE(check_surjectivity({{1, 0, 2}}, 2));
  for (std::int64_t n = 2; n <= 8; ++n) CHECK(check_surjectivity({{1, 0, n}, {0, 1, n}}, n));
}

TEST_CASE("orbits on exact-order vectors") {
  auto o2 = orbit_on_exact_order({{1, 0, 2}, {0, 1, 2}}, 2);
  REQUIRE(o2.size() == 1);
  CHECK(o2[0].size() == 3);
  auto o6 = orbit_on_exact_order({{1, 0, 6}, {0, 1, 6}}, 6);
  REQUIRE(o6.size() == 1);
  CHECK(o6[0].size() == 24);

  // (2,0),(0,2) transvections fix every vector mod 2, so each orbit stays in one class mod 2
  auto o4 = orbit_on_exact_order({{2, 0, 4}, {0, 2, 4}}, 4);
  CHECK(o4.size() > 1);
  std::size_t total = 0;
  for (const auto& orb : o4) {
    total += orb.size();
    for (const auto& v : orb) {
      CHECK(v.order() == 4);
      CHECK(mod(v.a(), 2) == mod(orb[0].a(), 2));
      CHECK(mod(v.b(), 2) == mod(orb[0].b(), 2));
    }
  }
  CHECK(total == 12);
  MESSAGE("orbits of <T(2,0), T(0,2)> on order-4 vectors: " << o4.size());
}

TEST_CASE("gcd_pairing_check") {
  CHECK(gcd_pairing_check({{1, 0, 6}, {0, 1, 6}}, 6));
  CHECK_FALSE(gcd_pairing_check({{1, 0, 2}}, 2));
  // brute-force scan over the 16 vectors mod 4
  bool expect = true;
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t b = 0; b < 4; ++b) {
      TorsionPoint l(a, b, 4);
      if (l.order() != 4) continue;
      std::int64_t g = 4;
      for (TorsionPoint d : {TorsionPoint(1, 0, 4), TorsionPoint(2, 1, 4)}) g = std::gcd(g, pairing_at_level(l, d, 4));
      expect = expect && g == 1;
    }
  CHECK(gcd_pairing_check({{1, 0, 4}, {2, 1, 4}}, 4) == expect);
  MESSAGE("gcd check for {(1,0),(2,1)} at n = 4: " << (expect ? "true" : "false"));
}

TEST_CASE("lem5_exhaustive") {
  for (std::int64_t n : {4, 12, 20, 28}) {
    Lem5Report r = lem5_exhaustive(n);
    CHECK(r.holds());
    CHECK(r.n == n);
    CHECK(r.pairs > 0);
    CHECK(r.instances > 0);
  }
  TorsionPoint a1(1, 0, 4), a2(1, 2, 4);
  CHECK(pairing(a1, a2) == 2);
  TorsionPoint d = a1 - a2;
  CHECK(d == TorsionPoint(0, 2, 4));
  CHECK(d.order() == 2);
  CHECK_THROWS_AS(lem5_exhaustive(8), InvalidArgument);
  CHECK_THROWS_AS(lem5_exhaustive(6), InvalidArgument);
  CHECK_THROWS_AS(lem5_exhaustive(44), InvalidArgument);
}

TEST_CASE("lem5 pair count agrees with a direct scan") {
  for (std::int64_t n : {4, 12}) {
    std::int64_t pairs = 0;
    auto pts = enumerate_torsion(n, true);
    for (const auto& x : pts)
      for (const auto& y : pts)
        if (!(x == y) && pairing_at_level(x, y, n) == n / 2) ++pairs;
    CHECK(lem5_exhaustive(n).pairs == pairs);
  }
  // for x = (1,0) the partners are (a,2) with a odd, so 12 * 2
  CHECK(lem5_exhaustive(4).pairs == 24);
}

TEST_CASE("classify_pair") {
  PairClass tt = classify_pair({1, 0, 2}, {0, 1, 2});
  CHECK(tt.kind == PairClass::Kind::TwoTwo);
  PairClass ss = classify_pair({1, 0, 6}, {2, 3, 6});
  CHECK(ss.kind == PairClass::Kind::SixSix);
  CHECK(ss.pairing == 3);
  CHECK(ss.diff_order == 6);
  CHECK(TorsionPoint(1, 0, 6) - TorsionPoint(2, 3, 6) == TorsionPoint(5, 3, 6));
  PairClass d = classify_pair({1, 0, 2}, {1, 0, 3});
  CHECK(d.kind == PairClass::Kind::DisjointExpected);
  CHECK(d.n1 == 2);
  CHECK(d.n2 == 3);
  // distinct 6-torsions with pairing 3 but difference of order 3 or 2
  CHECK(classify_pair({1, 0, 6}, {1, 3, 6}).kind == PairClass::Kind::DisjointExpected);
  CHECK_THROWS_AS(classify_pair({0, 0, 2}, {1, 0, 2}), InvalidArgument);
  CHECK_THROWS_AS(classify_pair({1, 0, 2}, {2, 0, 4}), InvalidArgument);
  CHECK(std::string(to_string(PairClass::Kind::SixSix)) == "SixSix");
}

TEST_CASE("classify_pair is symmetric and SL2-invariant at n = 6") {
  const std::int64_t n = 6;
  auto pts = enumerate_torsion(n);
  std::vector<ModMatrix> mats{ModMatrix(1, 1, 0, 1, n), ModMatrix(0, 5, 1, 0, n), ModMatrix(2, 1, 1, 1, n)};
  int sixsix = 0;
  for (const auto& x : pts)
    for (const auto& y : pts) {
      if (x.is_zero() || y.is_zero() || x == y) continue;
      PairClass c = classify_pair(x, y);
      CHECK(classify_pair(y, x).kind == c.kind);
      bool expect_six = x.order() == 6 && y.order() == 6 && (x - y).order() == 6 &&
                        pairing_at_level(x, y, 6) % 3 == 0 && pairing_at_level(x, y, 6) != 0;
      bool expect_two = x.order() == 2 && y.order() == 2;
      CHECK((c.kind == PairClass::Kind::SixSix) == expect_six);
      CHECK((c.kind == PairClass::Kind::TwoTwo) == expect_two);
      sixsix += expect_six;
      for (const auto& m : mats) CHECK(classify_pair(m.apply(x), m.apply(y)).kind == c.kind);
    }
  CHECK(sixsix > 0);
}

TEST_CASE("orbits are carried along by conjugation") {
  const std::int64_t n = 4;
  ModMatrix g(2, 1, 1, 1, n);
  std::vector<TorsionPoint> ds{{2, 0, n}, {0, 2, n}};
  std::vector<TorsionPoint> moved;
  for (const auto& d : ds) moved.push_back(g.apply(d));
  auto o1 = orbit_on_exact_order(ds, n), o2 = orbit_on_exact_order(moved, n);
  CHECK(o1.size() == o2.size());
  // conjugating a transvection gives the transvection of the moved vector
  for (const auto& d : ds) CHECK(g * transvection(d) * g.inverse() == transvection(g.apply(d)));
}

TEST_CASE("triple_exclusion_exhaustive") {
  TripleExclusionReport r6 = triple_exclusion_exhaustive(6);
  CHECK(r6.holds());
  CHECK(r6.sixsix_triples == 0);
  CHECK(r6.sixsix_pairs > 0);
  CHECK(r6.triples_scanned > 0);

  TripleExclusionReport r2 = triple_exclusion_exhaustive(2);
  CHECK(r2.two_torsion_ordered_pairs == 6);
  REQUIRE(r2.two_torsion_shared.size() == 3);
  CHECK(r2.shared_points_distinct);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& t : r2.two_torsion_shared) {
    CHECK(t.order() == 2);
    seen.insert({t.canonical().a(), t.canonical().b()});
  }
  CHECK(seen.size() == 3);
  CHECK_THROWS_AS(triple_exclusion_exhaustive(13), InvalidArgument);
  CHECK_THROWS_AS(triple_exclusion_exhaustive(1), InvalidArgument);
}

TEST_CASE("dichotomy_for_m") {
  for (std::int64_t m : {2, 3, 6}) CHECK(dichotomy_for_m(m) == Dichotomy::AlwaysNodal);
  CHECK(dichotomy_for_m(4) == Dichotomy::TriplesPossible);
  CHECK(dichotomy_for_m(12) == Dichotomy::TriplesPossible);
  for (std::int64_t m = 1; m <= 64; ++m) {
    bool any = false;
    for (const auto& t : subgroup_types(m)) any = any || t.contains_full_two_torsion();
    CHECK((dichotomy_for_m(m) == Dichotomy::TriplesPossible) == (m % 4 == 0));
    CHECK((dichotomy_for_m(m) == Dichotomy::TriplesPossible) == any);
  }
}

TEST_CASE("subgroup_types agree with explicit enumeration of subgroups") {
  // every subgroup of order m lives in J(E)_m; collect the distinct ones
  for (std::int64_t m = 1; m <= 8; ++m) {
    auto pts = enumerate_torsion(m);
    std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> groups;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i; j < pts.size(); ++j) {
        auto h = subgroup_from_generators({pts[i], pts[j]});
        if (std::int64_t(h.size()) != m) continue;
        std::vector<std::pair<std::int64_t, std::int64_t>> key;
        for (const auto& x : h) key.push_back({x.at_level(m).a(), x.at_level(m).b()});
        std::sort(key.begin(), key.end());
        groups.insert(key);
      }
    std::set<std::pair<std::int64_t, std::int64_t>> types;
    for (const auto& key : groups) {
      std::int64_t exponent = 1;
      for (auto [a, b] : key) exponent = std::lcm(exponent, TorsionPoint(a, b, m).order());
      types.insert({exponent, m / exponent});
    }
    std::set<std::pair<std::int64_t, std::int64_t>> listed;
    for (const auto& t : subgroup_types(m)) {
      listed.insert({t.a, t.b});
      CHECK(t.a % t.b == 0);
      auto h = subgroup_from_generators(subgroup_generators(t));
      CHECK(std::int64_t(h.size()) == m);
    }
    CHECK(listed == types);
  }
  CHECK(SubgroupType{2, 2}.to_string() == "Z/2xZ/2");
  CHECK(SubgroupType{4, 1}.to_string() == "Z/4");
}

TEST_CASE("severi_branch") {
  CHECK(severi_branch(5, 2) == SeveriBranch::DeformationNodal);
  CHECK(severi_branch(4, 1) == SeveriBranch::MainCase);
  CHECK(severi_branch(0, 1) == SeveriBranch::NotApplicable);
  CHECK(severi_branch(3, 0) == SeveriBranch::NotApplicable);
}
