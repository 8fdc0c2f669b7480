#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ellarr/errors.hpp"
#include "ellarr/torus.hpp"
#include "support.hpp"

using namespace ellarr;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("lattice normalization lands in the fundamental domain") {
  auto g = testing::rng(3);
  for (int i = 0; i < 500; ++i) {
    cplx tau(testing::uniform(g, -3, 3), testing::uniform(g, 0.05, 3));
    Lattice lat = Lattice::from_tau(tau);
    cplx t = lat.tau();
    CHECK(t.imag() > 0);
    CHECK(t.real() >= -0.5);
    CHECK(t.real() < 0.5);
    CHECK(std::abs(t) >= 1.0 - 1e-12);
  }
}

TEST_CASE("lattice normalization is invariant under SL2(Z)") {
  const cplx tau(0.17, 1.31);
  const Lattice ref = Lattice::from_tau(tau);
  const int mats[][4] = {{1, 1, 0, 1}, {0, -1, 1, 0}, {2, 1, 1, 1}, {1, 0, 3, 1}, {5, 2, 2, 1}};
  for (const auto& m : mats) {
    cplx moved = (double(m[0]) * tau + double(m[1])) / (double(m[2]) * tau + double(m[3]));
    CHECK(close(Lattice::from_tau(moved).tau(), ref.tau(), 1e-12));
  }
}

TEST_CASE("lattice boundary tie-break") {
  CHECK(close(Lattice::from_tau({0.5, 1.2}).tau(), {-0.5, 1.2}, 1e-15));
  const double s = std::sqrt(1 - 0.09);
  CHECK(close(Lattice::from_tau({0.3, s}).tau(), {-0.3, s}, 1e-12));
  CHECK(close(Lattice::hexagonal().tau(), {-0.5, std::sqrt(3.0) / 2}, 1e-15));
  CHECK(close(Lattice::from_periods({2, 0}, {0, 2}).tau(), {0, 1}, 1e-15));
  CHECK(close(Lattice::from_periods({0, 1}, {1, 0}).tau(), {0, 1}, 1e-15));
  CHECK_THROWS_AS(Lattice::from_tau({0.1, -1}), InvalidArgument);
  CHECK_THROWS_AS(Lattice::from_tau({0.1, 0}), InvalidArgument);
  CHECK(Lattice::square().is_special());
  CHECK(Lattice::hexagonal().is_special());
  CHECK_FALSE(Lattice::from_tau({0.21, 1.37}).is_special());
}

TEST_CASE("parse_lattice") {
  Lattice lat = parse_lattice("tau=0.21,1.37");
  CHECK(close(lat.tau(), {0.21, 1.37}, 1e-15));
  CHECK(lat.label() == "tau=0.21,1.37");
  CHECK_THROWS_AS(parse_lattice("0.21,1.37"), InvalidArgument);
  CHECK_THROWS_AS(parse_lattice("tau=0.21"), InvalidArgument);
  CHECK_THROWS_AS(parse_lattice("tau=a,1"), InvalidArgument);
  CHECK_THROWS_AS(parse_lattice("tau=0,-1"), InvalidArgument);
}

TEST_CASE("reduce_to_fundamental examples") {
  Lattice lat = Lattice::from_tau({0.21, 1.37});
  CHECK(close(reduce_to_fundamental(1.0 + 0.3 * lat.tau(), lat).z, 0.3 * lat.tau(), 1e-15));
  CHECK(reduce_to_fundamental(0.0, lat).z == cplx(0, 0));
  CHECK(close(reduce_to_fundamental({2.7, 3.4}, Lattice::square()).z, {0.7, 0.4}, 1e-14));
  CHECK_THROWS_AS(reduce_to_fundamental({NAN, 0}, lat), InvalidArgument);
  CHECK_THROWS_AS(reduce_to_fundamental({0, INFINITY}, lat), InvalidArgument);
}

TEST_CASE("reduction is idempotent and lattice invariant") {
  auto g = testing::rng(5);
  for (int i = 0; i < 200; ++i) {
    Lattice lat = random_generic_lattice(g);
    cplx z(testing::uniform(g, -5, 5), testing::uniform(g, -5, 5));
    cplx r = reduce_to_fundamental(z, lat).z;
    auto [x, y] = lat.coords(r);
    CHECK(x >= 0);
    CHECK(x < 1);
    CHECK(y >= 0);
    CHECK(y < 1);
    // z - r is a lattice vector
    auto [dx, dy] = lat.coords(z - r);
    CHECK(std::abs(dx - std::round(dx)) < 1e-12 * (1 + std::abs(z)));
    CHECK(std::abs(dy - std::round(dy)) < 1e-12 * (1 + std::abs(z)));
    CHECK(reduce_to_fundamental(r, lat).z == r);
    for (int m = -1; m <= 1; ++m)
      for (int k = -1; k <= 1; ++k) {
        cplx s = reduce_to_fundamental(z + lat.point(m, k), lat).z;
        // a coordinate near 0 may wrap to near 1; compare on the torus
        CHECK(torus_distance(s, r, lat) <= 1e-12 * (1 + std::abs(z)));
      }
  }
}

TEST_CASE("torus_distance agrees with a wide brute-force search") {
  auto g = testing::rng(6);
  for (int i = 0; i < 200; ++i) {
    Lattice lat = random_generic_lattice(g);
    cplx a = testing::random_point(lat, g), b(testing::uniform(g, -3, 3), testing::uniform(g, -3, 3));
    double best = INFINITY;
    for (int m = -8; m <= 8; ++m)
      for (int k = -8; k <= 8; ++k) best = std::min(best, std::abs(a - b + lat.point(m, k)));
    CHECK(torus_distance(a, b, lat) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("torsion_order examples") {
  CHECK(torsion_order({1, 0, 2}) == 2);
  CHECK(torsion_order({2, 2, 6}) == 3);
  CHECK(torsion_order({0, 0, 5}) == 1);
  CHECK(torsion_order({-1, 7, 4}) == 4);
}

TEST_CASE("order of multiples, exhaustive to n = 12") {
  for (std::int64_t n = 1; n <= 12; ++n)
    for (const auto& t : enumerate_torsion(n))
      for (std::int64_t k = 0; k <= 2 * n; ++k) {
        // smallest j >= 1 with j k t = 0, found by search
        std::int64_t j = 1;
        while (!((j * k) * t).is_zero()) ++j;
        CHECK((k * t).order() == j);
        CHECK((k * t).order() == t.order() / std::gcd(k, t.order()));
      }
}

TEST_CASE("torsion equality is equality on the torus") {
  Lattice lat = Lattice::from_tau({0.21, 1.37});
  CHECK(TorsionPoint(1, 0, 2) == TorsionPoint(2, 0, 4));
  CHECK(TorsionPoint(3, 9, 12) == TorsionPoint(1, 3, 4));
  CHECK_FALSE(TorsionPoint(1, 0, 2) == TorsionPoint(0, 1, 2));
  for (std::int64_t n = 1; n <= 6; ++n)
    for (const auto& s : enumerate_torsion(n))
      for (const auto& t : enumerate_torsion(2 * n)) {
        bool same_point = torus_distance(s.lift(lat), t.lift(lat), lat) < 1e-12;
        CHECK((s == t) == same_point);
      }
}

TEST_CASE("pairing examples") {
  CHECK(pairing({1, 0, 6}, {0, 1, 6}) == 1);
  CHECK(pairing({1, 0, 6}, {3, 3, 6}) == 3);
  for (const auto& t : enumerate_torsion(6)) CHECK(pairing(t, t) == 0);
  // mixed levels are rescaled to the lcm
  CHECK(pairing({1, 0, 2}, {0, 1, 4}) == 2);
  CHECK(pairing({1, 0, 2}, {0, 1, 3}) == 0);
  CHECK(pairing_at_level({1, 0, 2}, {0, 1, 2}, 6) == 9 % 6);
  CHECK_THROWS_AS(pairing_at_level({1, 0, 4}, {0, 1, 2}, 6), InvalidArgument);
}

TEST_CASE("pairing is bilinear and antisymmetric, exhaustive to n = 8") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    const auto pts = enumerate_torsion(n);
    for (const auto& s : pts)
      for (const auto& t : pts) {
        CHECK((pairing_at_level(s, t, n) + pairing_at_level(t, s, n)) % n == 0);
        CHECK(pairing(s, t) == pairing_at_level(s, t, n));
        for (const auto& u : pts) {
          std::int64_t lhs = pairing_at_level(s + t, u, n);
          std::int64_t rhs = (pairing_at_level(s, u, n) + pairing_at_level(t, u, n)) % n;
          CHECK(lhs == rhs);
        }
      }
  }
}

TEST_CASE("enumerate_torsion counts") {
  CHECK(enumerate_torsion(2, true).size() == 3);
  CHECK(enumerate_torsion(6, true).size() == 24);
  CHECK(enumerate_torsion(1).size() == 1);
  CHECK(enumerate_torsion(1)[0].is_zero());
  CHECK(enumerate_torsion(7).size() == 49);
  CHECK_THROWS_AS(enumerate_torsion(0), InvalidArgument);
  for (std::int64_t n = 1; n <= 30; ++n) {
    // degree formula evaluated in floating point with primes found by trial division
    double f = double(n * n);
    for (std::int64_t p = 2; p <= n; ++p) {
      bool prime = true;
      for (std::int64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
      if (prime && n % p == 0) f *= 1.0 - 1.0 / double(p * p);
    }
    auto pts = enumerate_torsion(n, true);
    CHECK(std::int64_t(pts.size()) == std::llround(f));
    CHECK(exact_order_count(n) == std::llround(f));
    for (const auto& t : pts) CHECK(t.order() == n);
  }
}

TEST_CASE("subgroup_from_generators") {
  auto a = subgroup_from_generators({{1, 0, 2}});
  CHECK(a.size() == 2);
  CHECK(a[0].is_zero());
  CHECK(a[1] == TorsionPoint(1, 0, 2));
  CHECK(subgroup_from_generators({{1, 0, 2}, {0, 1, 2}}).size() == 4);
  auto c4 = subgroup_from_generators({{1, 0, 4}});
  CHECK(c4.size() == 4);
  int twos = 0;
  for (const auto& t : c4) twos += t.order() == 2;
  CHECK(twos == 1);

  for (std::int64_t m = 1; m <= 12; ++m)
    for (const auto& t : enumerate_torsion(m, true)) CHECK(std::int64_t(subgroup_from_generators({t}).size()) == m);

  auto g = subgroup_from_generators({{1, 2, 6}, {3, 0, 4}});
  std::set<std::pair<std::int64_t, std::int64_t>> keys;
  const std::int64_t lvl = g[0].level();
  for (const auto& x : g) keys.insert({x.a(), x.b()});
  CHECK((lvl * lvl) % std::int64_t(g.size()) == 0);
  for (const auto& x : g) {
    CHECK(keys.count({(-x).a(), (-x).b()}) == 1);
    for (const auto& y : g) {
      TorsionPoint s = x + y;
      CHECK(keys.count({s.a(), s.b()}) == 1);
    }
  }
  CHECK_THROWS_AS(subgroup_from_generators({}), InvalidArgument);
}

TEST_CASE("parse_torsion") {
  TorsionPoint t = parse_torsion("1/6,3/6");
  CHECK(t.a() == 1);
  CHECK(t.b() == 3);
  CHECK(t.level() == 6);
  CHECK(t.to_string() == "1/6,3/6");
  CHECK(parse_torsion(" -1/4, 5/4 ").to_string() == "3/4,1/4");
  CHECK_THROWS_AS(parse_torsion("1/2,1/3"), InvalidArgument);
  CHECK_THROWS_AS(parse_torsion("1/0,0/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_torsion("0.5,0"), InvalidArgument);
  CHECK_THROWS_AS(parse_torsion("1/2"), InvalidArgument);
}
