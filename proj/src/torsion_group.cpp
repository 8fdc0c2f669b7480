#include "ellarr/torsion_group.hpp"

#include <algorithm>
#include <numeric>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

void check_cap(std::int64_t n, std::int64_t cap) {
  if (n > cap)
    throw LevelCapExceeded("level " + std::to_string(n) + " exceeds the enumeration cap " +
                           std::to_string(cap));
}

std::vector<TorsionPoint> nonzero_up_to(std::int64_t nmax) {
  std::vector<TorsionPoint> out;
  for (std::int64_t n = 2; n <= nmax; ++n)
    for (const auto& t : enumerate_torsion(n, true)) out.push_back(t);
  return out;
}

}  // namespace

// ------------------------------------------------------------- ModMatrix

ModMatrix::ModMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n)
    : e_{0, 0, 0, 0}, n_(n) {
  if (n < 1) throw InvalidArgument("matrix level must be positive");
  e_[0] = mod(a, n);
  e_[1] = mod(b, n);
  e_[2] = mod(c, n);
  e_[3] = mod(d, n);
  if (det() != mod(1, n))
    throw InvalidArgument("matrix " + to_string() + " does not have determinant 1");
}

ModMatrix ModMatrix::identity(std::int64_t n) { return {1, 0, 0, 1, n}; }

std::int64_t ModMatrix::det() const { return mod(e_[0] * e_[3] - e_[1] * e_[2], n_); }

ModMatrix ModMatrix::inverse() const { return {e_[3], -e_[1], -e_[2], e_[0], n_}; }

std::int64_t ModMatrix::index() const { return ((e_[0] * n_ + e_[1]) * n_ + e_[2]) * n_ + e_[3]; }

TorsionPoint ModMatrix::apply(const TorsionPoint& v) const {
  TorsionPoint w = v.at_level(n_);
  return {e_[0] * w.a() + e_[1] * w.b(), e_[2] * w.a() + e_[3] * w.b(), n_};
}

ModMatrix operator*(const ModMatrix& x, const ModMatrix& y) {
  if (x.n_ != y.n_) throw InvalidArgument("matrix levels differ");
  const auto* p = x.e_;
  const auto* q = y.e_;
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
          p[2] * q[1] + p[3] * q[3], x.n_};
}

std::string ModMatrix::to_string() const {
  return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) +
         "," + std::to_string(e_[3]) + "]] mod " + std::to_string(n_);
}

// ---------------------------------------------------------- transvections

ModMatrix transvection(const TorsionPoint& delta) {
  if (delta.is_zero()) throw InvalidArgument("transvection along the zero vector");
  const std::int64_t x = delta.a(), y = delta.b();
  // lambda + (lx y - ly x) (x, y)
  return {1 + x * y, -x * x, y * y, 1 - x * y, delta.level()};
}

std::vector<ModMatrix> transvections(const std::vector<TorsionPoint>& deltas, std::int64_t n) {
  std::vector<ModMatrix> out;
  out.reserve(deltas.size());
  for (const auto& d : deltas) out.push_back(transvection(TorsionPoint(d.a(), d.b(), n)));
  return out;
}

std::int64_t sl2_order(std::int64_t n) {
  if (n < 1) throw InvalidArgument("sl2_order: n must be positive");
  std::int64_t r = n * n * n;
  for (std::int64_t p : prime_divisors(n)) r = r / (p * p) * (p * p - 1);
  return r;
}

MatrixGroup generated_subgroup(const std::vector<ModMatrix>& gens, std::int64_t cap) {
  if (gens.empty()) throw InvalidArgument("generated_subgroup: no generators");
  const std::int64_t n = gens.front().level();
  for (const auto& g : gens)
    if (g.level() != n) throw InvalidArgument("generated_subgroup: generators at different levels");
  check_cap(n, cap);

  std::vector<char> seen(static_cast<std::size_t>(n * n * n * n), 0);
  std::vector<ModMatrix> elems{ModMatrix::identity(n)};
  seen[static_cast<std::size_t>(elems[0].index())] = 1;
  // In a finite group the monoid generated by gens is already a group.
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      ModMatrix y = elems[i] * g;
      auto& s = seen[static_cast<std::size_t>(y.index())];
      if (!s) {
        s = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return {n, std::move(elems)};
}

bool check_surjectivity(const std::vector<TorsionPoint>& deltas, std::int64_t n, std::int64_t cap) {
  check_cap(n, cap);
  if (deltas.empty()) return sl2_order(n) == 1;
  return generated_subgroup(transvections(deltas, n), cap).order() == sl2_order(n);
}

std::vector<std::vector<TorsionPoint>> orbit_on_exact_order(const std::vector<TorsionPoint>& deltas,
                                                            std::int64_t n, std::int64_t cap) {
  check_cap(n, cap);
  std::vector<ModMatrix> gens = transvections(deltas, n);
  std::vector<std::int64_t> orbit_of(static_cast<std::size_t>(n * n), -1);
  std::vector<std::vector<TorsionPoint>> orbits;
  for (const auto& v : enumerate_torsion(n, true)) {
    auto key = [n](const TorsionPoint& t) { return static_cast<std::size_t>(t.a() * n + t.b()); };
    if (orbit_of[key(v)] >= 0) continue;
    const auto id = static_cast<std::int64_t>(orbits.size());
    std::vector<TorsionPoint> orb{v};
    orbit_of[key(v)] = id;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens) {
        TorsionPoint w = g.apply(orb[i]);
        if (orbit_of[key(w)] < 0) {
          orbit_of[key(w)] = id;
          orb.push_back(w);
        }
      }
    std::sort(orb.begin(), orb.end(), [](const TorsionPoint& s, const TorsionPoint& t) {
      return std::pair(s.a(), s.b()) < std::pair(t.a(), t.b());
    });
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

bool gcd_pairing_check(const std::vector<TorsionPoint>& deltas, std::int64_t n) {
  if (n < 1) throw InvalidArgument("gcd_pairing_check: n must be positive");
  std::vector<TorsionPoint> ds;
  for (const auto& d : deltas) ds.emplace_back(d.a(), d.b(), n);
  for (const auto& lam : enumerate_torsion(n, true)) {
    std::int64_t g = n;
    for (const auto& d : ds) g = std::gcd(g, pairing_at_level(lam, d, n));
    if (g != 1) return false;
  }
  return true;
}

// ------------------------------------------------------------- lemmas

Lem5Report lem5_exhaustive(std::int64_t n) {
  if (n < 4 || n % 4 != 0 || n % 8 == 0 || n > 36)
    throw InvalidArgument("lem5_exhaustive needs 4 | n, 8 not dividing n, n <= 36; got " + std::to_string(n));
  Lem5Report r;
  r.n = n;
  const auto pts = enumerate_torsion(n, true);
  for (const auto& a1 : pts)
    for (const auto& a2 : pts) {
      if (a1 == a2 || pairing_at_level(a1, a2, n) != n / 2) continue;
      ++r.pairs;
      for (std::int64_t d1 = 1; d1 < n; d1 += 2)
        for (std::int64_t d2 = 1; d2 < n; d2 += 2) {
          TorsionPoint diff = d1 * a1 - d2 * a2;
          if (!(4 * diff).is_zero()) continue;
          ++r.instances;
          if (diff.order() != 2 && !r.counterexample) {
            r.counterexample = "a1=" + a1.to_string() + " a2=" + a2.to_string() + " d1=" + std::to_string(d1) +
                               " d2=" + std::to_string(d2) + " order " + std::to_string(diff.order());
          }
        }
    }
  return r;
}

PairClass classify_pair(const TorsionPoint& t1, const TorsionPoint& t2) {
  if (t1.is_zero() || t2.is_zero()) throw InvalidArgument("classify_pair: zero torsion point");
  if (t1 == t2) throw InvalidArgument("classify_pair: points are equal");
  PairClass c;
  c.n1 = t1.order();
  c.n2 = t2.order();
  c.pairing = pairing(t1, t2);
  c.diff_order = (t1 - t2).order();
  if (c.n1 == 2 && c.n2 == 2) {
    c.kind = PairClass::Kind::TwoTwo;
  } else if (c.n1 == 6 && c.n2 == 6 && pairing_at_level(t1, t2, 6) == 3 && c.diff_order == 6) {
    // 3 = -3 mod 6, so the orientation of the pairing does not matter here
    c.kind = PairClass::Kind::SixSix;
  }
  return c;
}

const char* to_string(PairClass::Kind k) {
  switch (k) {
    case PairClass::Kind::TwoTwo: return "TwoTwo";
    case PairClass::Kind::SixSix: return "SixSix";
    default: return "DisjointExpected";
  }
}

TripleExclusionReport triple_exclusion_exhaustive(std::int64_t nmax) {
  if (nmax < 2 || nmax > 12) throw InvalidArgument("triple_exclusion_exhaustive: need 2 <= nmax <= 12");
  TripleExclusionReport r;
  r.nmax = nmax;

  const auto two = enumerate_torsion(2, true);
  for (const auto& s : two)
    for (const auto& t : two)
      if (!(s == t)) ++r.two_torsion_ordered_pairs;
  for (std::size_t i = 0; i < two.size(); ++i)
    for (std::size_t j = i + 1; j < two.size(); ++j) r.two_torsion_shared.push_back(two[i] + two[j]);
  {
    auto s = r.two_torsion_shared;
    std::sort(s.begin(), s.end());
    r.shared_points_distinct = std::adjacent_find(s.begin(), s.end()) == s.end();
  }

  const auto pts = nonzero_up_to(nmax);
  const std::size_t k = pts.size();
  std::vector<char> six(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (classify_pair(pts[i], pts[j]).kind == PairClass::Kind::SixSix) {
        six[i * k + j] = six[j * k + i] = 1;
        ++r.sixsix_pairs;
      }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        ++r.triples_scanned;
        if (six[i * k + j] && six[i * k + l] && six[j * k + l]) ++r.sixsix_triples;
      }
  return r;
}

// ------------------------------------------------------------ dichotomy

std::string SubgroupType::to_string() const {
  if (b == 1) return "Z/" + std::to_string(a);
  return "Z/" + std::to_string(a) + "xZ/" + std::to_string(b);
}

std::vector<SubgroupType> subgroup_types(std::int64_t m) {
  if (m < 1) throw InvalidArgument("subgroup_types: m must be positive");
  std::vector<SubgroupType> out;
  for (std::int64_t b = 1; b * b <= m; ++b) {
    if (m % b != 0) continue;
    std::int64_t a = m / b;
    if (a % b == 0) out.push_back({a, b});
  }
  return out;
}

std::vector<TorsionPoint> subgroup_generators(const SubgroupType& t) {
  std::vector<TorsionPoint> g{TorsionPoint(1, 0, t.a)};
  if (t.b > 1) g.emplace_back(0, 1, t.b);
  return g;
}

Dichotomy dichotomy_for_m(std::int64_t m) {
  for (const auto& t : subgroup_types(m))
    if (t.contains_full_two_torsion()) return Dichotomy::TriplesPossible;
  return Dichotomy::AlwaysNodal;
}

const char* to_string(Dichotomy d) {
  return d == Dichotomy::TriplesPossible ? "TriplesPossible" : "AlwaysNodal";
}

SeveriBranch severi_branch(std::int64_t m, std::int64_t deg_m) {
  if (m <= 0 || deg_m < 1) return SeveriBranch::NotApplicable;
  return deg_m >= 2 ? SeveriBranch::DeformationNodal : SeveriBranch::MainCase;
}

const char* to_string(SeveriBranch b) {
  switch (b) {
    case SeveriBranch::DeformationNodal: return "DeformationNodal";
    case SeveriBranch::MainCase: return "MainCase";
    default: return "NotApplicable";
  }
}

}  // namespace ellarr
