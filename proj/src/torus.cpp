#include "ellarr/torus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Fractional part in [0, 1). x - floor(x) can round up to exactly 1.
double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s) {
  std::string str(trim(s));
  if (str.empty()) throw InvalidArgument("empty number");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + str + "'");
  }
  if (used != str.size()) throw InvalidArgument("not a number: '" + str + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------- Lattice

Lattice Lattice::from_periods(cplx omega1, cplx omega2, std::string label) {
  if (!finite(omega1) || !finite(omega2) || std::abs(omega1) == 0.0)
    throw InvalidArgument("lattice periods must be finite and nonzero");
  cplx tau = omega2 / omega1;
  if (tau.imag() < 0) tau = -tau;  // swapping orientation of the basis
  return from_tau(tau, std::move(label));
}

Lattice Lattice::from_tau(cplx tau, std::string label) {
  if (!finite(tau)) throw InvalidArgument("tau must be finite");
  if (!(tau.imag() > 0)) throw InvalidArgument("tau must have positive imaginary part");
  for (int iter = 0; iter < 1000; ++iter) {
    tau -= std::floor(tau.real() + 0.5);
    if (std::norm(tau) < 1.0 - 1e-15) {
      tau = -1.0 / tau;
      continue;
    }
    break;
  }
  // Boundary tie-break: the unit arc is kept only on the left half.
  if (std::abs(std::norm(tau) - 1.0) <= 1e-15 && tau.real() > 0) tau = -std::conj(tau);
  if (tau.real() >= 0.5) tau -= 1.0;
  return Lattice(tau, std::move(label));
}

Lattice Lattice::square() { return from_tau({0.0, 1.0}, "square"); }

Lattice Lattice::hexagonal() {
  return from_tau({-0.5, std::sqrt(3.0) / 2.0}, "hexagonal");
}

std::pair<double, double> Lattice::coords(cplx z) const {
  double y = z.imag() / tau_.imag();
  double x = z.real() - y * tau_.real();
  return {x, y};
}

bool Lattice::is_special(double tol) const {
  const cplx rho(-0.5, std::sqrt(3.0) / 2.0);
  return std::abs(tau_ - cplx(0, 1)) < tol || std::abs(tau_ - rho) < tol;
}

Lattice parse_lattice(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 4) != "tau=") throw InvalidArgument("lattice spec must look like tau=<re>,<im>");
  auto body = text.substr(4);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("lattice spec must look like tau=<re>,<im>");
  double re = parse_double(body.substr(0, comma));
  double im = parse_double(body.substr(comma + 1));
  return Lattice::from_tau({re, im}, std::string(text));
}

// ------------------------------------------------------------ TorusPoint

TorusPoint reduce_to_fundamental(cplx z, const Lattice& lat) {
  if (!finite(z)) throw InvalidArgument("cannot reduce a non-finite point");
  auto [x, y] = lat.coords(z);
  if (x >= 0 && x < 1 && y >= 0 && y < 1) return {z};  // keeps reduction idempotent to the bit
  return {lat.point(frac(x), frac(y))};
}

cplx torus_difference(cplx a, cplx b, const Lattice& lat) {
  cplx d = a - b;
  auto [x, y] = lat.coords(d);
  d = lat.point(x - std::round(x), y - std::round(y));
  cplx best = d;
  for (int m = -1; m <= 1; ++m)
    for (int k = -1; k <= 1; ++k) {
      cplx c = d + lat.point(m, k);
      if (std::abs(c) < std::abs(best)) best = c;
    }
  return best;
}

double torus_distance(cplx a, cplx b, const Lattice& lat) {
  return std::abs(torus_difference(a, b, lat));
}

// ---------------------------------------------------------- TorsionPoint

TorsionPoint::TorsionPoint(std::int64_t a, std::int64_t b, std::int64_t n) : n_(n) {
  if (n < 1) throw InvalidArgument("torsion level must be positive");
  a_ = mod(a, n);
  b_ = mod(b, n);
}

std::int64_t TorsionPoint::order() const {
  return n_ / std::gcd(std::gcd(a_, b_), n_);
}

TorsionPoint TorsionPoint::canonical() const {
  std::int64_t k = n_ / order();
  return {a_ / k, b_ / k, order()};
}

TorsionPoint TorsionPoint::at_level(std::int64_t m) const {
  TorsionPoint c = canonical();
  if (m < 1 || m % c.n_ != 0)
    throw InvalidArgument("torsion point " + to_string() + " does not lie in J(E)_" + std::to_string(m));
  std::int64_t k = m / c.n_;
  return {c.a_ * k, c.b_ * k, m};
}

TorsionPoint TorsionPoint::operator-() const { return {-a_, -b_, n_}; }

TorsionPoint operator+(const TorsionPoint& s, const TorsionPoint& t) {
  std::int64_t n = std::lcm(s.n_, t.n_);
  std::int64_t ks = n / s.n_, kt = n / t.n_;
  return {s.a_ * ks + t.a_ * kt, s.b_ * ks + t.b_ * kt, n};
}

TorsionPoint operator-(const TorsionPoint& s, const TorsionPoint& t) { return s + (-t); }

TorsionPoint operator*(std::int64_t k, const TorsionPoint& t) {
  return {mod(k, t.n_) * t.a_, mod(k, t.n_) * t.b_, t.n_};
}

bool operator==(const TorsionPoint& s, const TorsionPoint& t) {
  TorsionPoint cs = s.canonical(), ct = t.canonical();
  return cs.n_ == ct.n_ && cs.a_ == ct.a_ && cs.b_ == ct.b_;
}

bool operator<(const TorsionPoint& s, const TorsionPoint& t) {
  TorsionPoint cs = s.canonical(), ct = t.canonical();
  if (cs.n_ != ct.n_) return cs.n_ < ct.n_;
  if (cs.a_ != ct.a_) return cs.a_ < ct.a_;
  return cs.b_ < ct.b_;
}

cplx TorsionPoint::lift(const Lattice& lat) const {
  return lat.point(static_cast<double>(a_) / static_cast<double>(n_),
                   static_cast<double>(b_) / static_cast<double>(n_));
}

std::string TorsionPoint::to_string() const {
  return std::to_string(a_) + "/" + std::to_string(n_) + "," + std::to_string(b_) + "/" +
         std::to_string(n_);
}

TorsionPoint parse_torsion(std::string_view text) {
  text = trim(text);
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("torsion spec must look like a/n,b/n");
  auto frac_part = [](std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) throw InvalidArgument("torsion spec must look like a/n,b/n");
    return std::pair{parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1))};
  };
  auto [a, na] = frac_part(text.substr(0, comma));
  auto [b, nb] = frac_part(text.substr(comma + 1));
  if (na != nb) throw InvalidArgument("torsion spec denominators differ: " + std::string(text));
  if (na < 1) throw InvalidArgument("torsion level must be positive");
  return {a, b, na};
}

std::int64_t torsion_order(const TorsionPoint& t) { return t.order(); }

std::int64_t pairing_at_level(const TorsionPoint& t1, const TorsionPoint& t2, std::int64_t m) {
  TorsionPoint s = t1.at_level(m), t = t2.at_level(m);
  return mod(s.a() * t.b() - t.a() * s.b(), m);
}

std::int64_t pairing(const TorsionPoint& t1, const TorsionPoint& t2) {
  std::int64_t n = std::lcm(t1.level(), t2.level());
  std::int64_t k1 = n / t1.level(), k2 = n / t2.level();
  return mod(t1.a() * k1 * t2.b() * k2 - t2.a() * k2 * t1.b() * k1, n);
}

std::vector<TorsionPoint> enumerate_torsion(std::int64_t n, bool exact_order) {
  if (n < 1) throw InvalidArgument("enumerate_torsion: n must be positive");
  std::vector<TorsionPoint> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b) {
      TorsionPoint t(a, b, n);
      if (!exact_order || t.order() == n) out.push_back(t);
    }
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::int64_t exact_order_count(std::int64_t n) {
  if (n < 1) throw InvalidArgument("exact_order_count: n must be positive");
  std::int64_t c = n * n;
  for (std::int64_t p : prime_divisors(n)) c = c / (p * p) * (p * p - 1);
  return c;
}

std::vector<TorsionPoint> subgroup_from_generators(const std::vector<TorsionPoint>& gens) {
  if (gens.empty()) throw InvalidArgument("subgroup_from_generators: no generators");
  std::int64_t n = 1;
  for (const auto& g : gens) n = std::lcm(n, g.level());
  std::vector<TorsionPoint> lifted;
  for (const auto& g : gens) lifted.push_back(g.at_level(n));

  std::set<std::pair<std::int64_t, std::int64_t>> seen{{0, 0}};
  std::vector<TorsionPoint> frontier{TorsionPoint(0, 0, n)};
  while (!frontier.empty()) {
    std::vector<TorsionPoint> next;
    for (const auto& x : frontier)
      for (const auto& g : lifted) {
        TorsionPoint y = x + g;
        if (seen.insert({y.a(), y.b()}).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<TorsionPoint> out;
  out.reserve(seen.size());
  for (auto [a, b] : seen) out.emplace_back(a, b, n);
  return out;
}

}  // namespace ellarr
