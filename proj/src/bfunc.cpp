#include "ellarr/bfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised when a cell contour passes too close to a pole or a zero; the
// caller moves the grid and starts again.
struct ContourHit {};

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

// ------------------------------------------------------------- BFunction

std::pair<cplx, cplx> BFunction::poles() const {
  return {reduce_to_fundamental(p_, lattice()).z, reduce_to_fundamental(p_ - lift_, lattice()).z};
}

cplx BFunction::operator()(cplx z) const {
  const cplx u = z - p_;
  return w_.zeta(u) - w_.zeta(u + lift_) + c_;
}

cplx BFunction::derivative(cplx z) const {
  const cplx u = z - p_;
  return -w_.wp(u) + w_.wp(u + lift_);
}

BFunction BFunction::shifted(cplx delta) const {
  BFunction g = *this;
  g.c_ += delta;
  g.normalized_ = false;
  return g;
}

BFunction construct_b(TorusPoint p, const TorsionPoint& t, const Lattice& lat, const NumericPolicy& policy,
                      std::pair<std::int64_t, std::int64_t> lift_shift) {
  if (t.order() < 2)
    throw InvalidArgument("construct_b: tau = " + t.to_string() + " has order < 2; no pole pair exists");
  const TorsionPoint tc = t.canonical();
  const auto n = static_cast<double>(tc.level());
  const auto [si, sj] = lift_shift;
  const cplx lift = tc.lift(lat) + lat.point(static_cast<double>(si), static_cast<double>(sj));
  Weierstrass w(lat, policy);
  // n * lift = (a + si n) + (b + sj n) tau, a lattice vector.
  const double m = static_cast<double>(tc.a()) + static_cast<double>(si) * n;
  const double k = static_cast<double>(tc.b()) + static_cast<double>(sj) * n;
  const cplx c = w.quasi_increment(m, k) / n;
  const cplx pz = reduce_to_fundamental(p.z, lat).z;
  BFunction f(std::move(w), policy, pz, tc, lift, c);

  // The constant above comes from telescoping; confirm it.
  const std::array<std::pair<double, double>, 2> probes{{{0.2371, 0.1913}, {0.6180, 0.4142}}};
  for (auto [x, y] : probes) {
    cplx z = pz + lat.point(x, y);
    cplx s;
    try {
      s = translate_sum(f, z);
    } catch (const PoleProximity&) {
      s = translate_sum(f, z + lat.point(0.0713, 0.0391));
    }
    double scale = 1.0;
    for (std::int64_t j = 0; j < tc.level(); ++j) scale = std::max(scale, std::abs(f(z + static_cast<double>(j) * lift)));
    if (std::abs(s) > policy.translate_sum_check * scale)
      throw NumericFailure("construct_b: translate sum check failed (|sum| = " + std::to_string(std::abs(s)) + ")");
  }
  return f;
}

cplx eval_b(const BFunction& f, cplx z) {
  auto [p0, p1] = f.poles();
  const Lattice& lat = f.lattice();
  if (torus_distance(z, p0, lat) < f.policy().pole_guard || torus_distance(z, p1, lat) < f.policy().pole_guard)
    throw PoleProximity("eval_b: point within the pole guard");
  return f(z);
}

namespace {

void check_translate(const BFunction& f, cplx z) {
  auto [p0, p1] = f.poles();
  const Lattice& lat = f.lattice();
  const double g = f.policy().translate_pole_guard;
  if (torus_distance(z, p0, lat) < g || torus_distance(z, p1, lat) < g)
    throw PoleProximity("translate of the evaluation point lies within the guard of a pole");
}

}  // namespace

cplx translate_sum(const BFunction& f, cplx z) {
  cplx sum = 0;
  for (std::int64_t k = 0; k < f.order(); ++k) {
    cplx zk = z + static_cast<double>(k) * f.tau_lift();
    check_translate(f, zk);
    sum += f(zk);
  }
  return sum;
}

cplx full_level_sum(const BFunction& f, cplx z, std::int64_t m) {
  if (m < 1 || m % f.order() != 0)
    throw InvalidArgument("full_level_sum: order " + std::to_string(f.order()) + " does not divide m = " +
                          std::to_string(m));
  const Lattice& lat = f.lattice();
  const auto md = static_cast<double>(m);
  cplx sum = 0;
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < m; ++j) {
      cplx zk = z + lat.point(static_cast<double>(i) / md, static_cast<double>(j) / md);
      check_translate(f, zk);
      sum += f(zk);
    }
  return sum;
}

// ------------------------------------------------------------ zero search

namespace {

class ZeroFinder {
 public:
  explicit ZeroFinder(const BFunction& f) : f_(f), lat_(f.lattice()), pol_(f.policy()) {
    auto [p0, p1] = f.poles();
    poles_ = {p0, p1};
  }

  ZeroPair run() {
    std::mt19937_64 rng(pol_.jitter_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = pol_.zero_grid_cells;
    const double h = 1.0 / n;
    double u0 = 0.0, v0 = 0.0;
    for (int attempt = 1; attempt <= 12; ++attempt) {
      if (poles_clear_of_grid(u0, v0, h)) {
        try {
          ZeroPair z = search(u0, v0, n);
          z.grid_attempts = attempt;
          return z;
        } catch (const ContourHit&) {
        }
      }
      u0 = unit(rng) * h;
      v0 = unit(rng) * h;
    }
    throw NumericFailure("find_zeros: every contour grid tried touched a pole or a zero");
  }

 private:
  struct Cell {
    double u, v, size;  // lower-left corner in lattice coordinates, side length
  };
  struct Found {
    cplx z;
    int count;
    double size;
    Cell cell;
  };

  // Distance, in the plane, from a pole to the nearest grid line.
  bool poles_clear_of_grid(double u0, double v0, double h) const {
    const cplx tau = lat_.tau();
    for (cplx pz : poles_) {
      auto [x, y] = lat_.coords(pz);
      double fu = frac((x - u0) / h), fv = frac((y - v0) / h);
      double du = std::min(fu, 1.0 - fu) * h * tau.imag() / std::abs(tau);
      double dv = std::min(fv, 1.0 - fv) * h * tau.imag();
      if (std::min(du, dv) < pol_.contour_guard) return false;
    }
    return true;
  }

  double pole_distance(cplx z) const {
    double d = std::numeric_limits<double>::infinity();
    for (cplx pz : poles_) d = std::min(d, torus_distance(z, pz, lat_));
    return d;
  }

  cplx value(cplx z) const {
    if (pole_distance(z) < pol_.pole_guard) throw ContourHit{};
    cplx v = f_(z);
    if (!(std::abs(v) > 1e-10)) throw ContourHit{};
    return v;
  }

  // Change of arg b along the straight segment za -> zb.
  double arg_change(cplx za, cplx zb, cplx ba, cplx bb, double max_len, int depth) const {
    const double len = std::abs(zb - za);
    const cplx mid = 0.5 * (za + zb);
    const double step = std::arg(bb / ba);
    const bool fine = std::abs(step) < 0.4 && len <= max_len && len < 0.5 * pole_distance(mid);
    if (fine) return step;
    if (depth > 48) throw ContourHit{};
    const cplx bm = value(mid);
    return arg_change(za, mid, ba, bm, max_len, depth + 1) + arg_change(mid, zb, bm, bb, max_len, depth + 1);
  }

  double edge(double ua, double va, double ub, double vb, double max_len) const {
    cplx za = lat_.point(ua, va), zb = lat_.point(ub, vb);
    return arg_change(za, zb, value(za), value(zb), max_len, 0);
  }

  int poles_in(const Cell& c) const {
    int k = 0;
    for (cplx pz : poles_) {
      auto [x, y] = lat_.coords(pz);
      double du = frac(x - c.u), dv = frac(y - c.v);
      if (du < c.size && dv < c.size) ++k;
    }
    return k;
  }

  static int to_count(double winding) {
    double w = winding / kTwoPi;
    double r = std::round(w);
    if (std::abs(w - r) > 0.05) throw ContourHit{};
    return static_cast<int>(r);
  }

  int zeros_in(const Cell& c) const {
    const double s = c.size, max_len = 0.5 * s;
    double w = edge(c.u, c.v, c.u + s, c.v, max_len) + edge(c.u + s, c.v, c.u + s, c.v + s, max_len) -
               edge(c.u, c.v + s, c.u + s, c.v + s, max_len) - edge(c.u, c.v, c.u, c.v + s, max_len);
    int k = to_count(w) + poles_in(c);
    if (k < 0) throw ContourHit{};
    return k;
  }

  ZeroPair search(double u0, double v0, int n) {
    const double h = 1.0 / n;
    // Edges are shared between neighbouring cells and periodic across the
    // parallelogram, so the cell counts always total the number of poles.
    std::vector<double> horiz(static_cast<std::size_t>(n * n)), vert(static_cast<std::size_t>(n * n));
    auto at = [n](int i, int j) { return static_cast<std::size_t>((i % n) * n + (j % n)); };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u = u0 + i * h, v = v0 + j * h;
        horiz[at(i, j)] = edge(u, v, u + h, v, 0.5 * h);
        vert[at(i, j)] = edge(u, v, u, v + h, 0.5 * h);
      }

    std::vector<Found> found;
    int total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double w = horiz[at(i, j)] + vert[at(i + 1, j)] - horiz[at(i, j + 1)] - vert[at(i, j)];
        Cell c{u0 + i * h, v0 + j * h, h};
        const int k = to_count(w) + poles_in(c);
        if (k < 0) throw ContourHit{};
        total += k;
        if (k > 0) locate(c, k, found);
      }
    if (total != 2)
      throw NumericFailure("find_zeros: argument principle counted " + std::to_string(total) + " zeros, expected 2");

    std::vector<cplx> zs;
    for (const Found& z : found) {
      auto got = solve_cell(z);
      zs.insert(zs.end(), got.begin(), got.end());
    }
    if (zs.size() != 2) throw NumericFailure("find_zeros: refinement produced the wrong number of zeros");

    ZeroPair out;
    cplx a = reduce_to_fundamental(zs[0], lat_).z, b = reduce_to_fundamental(zs[1], lat_).z;
    auto key = [](cplx z) { return std::pair{z.real(), z.imag()}; };
    if (key(b) < key(a)) std::swap(a, b);
    out.q1 = a;
    out.q2 = b;
    out.double_zero = torus_distance(a, b, lat_) < pol_.double_zero_cluster;
    out.residual1 = std::abs(f_(a));
    out.residual2 = std::abs(f_(b));
    out.deriv1 = std::abs(f_.derivative(a));
    out.deriv2 = std::abs(f_.derivative(b));
    const double limit = pol_.zero_residual;
    if (out.residual1 > limit || out.residual2 > limit)
      throw NumericFailure("find_zeros: refined zero residual above tolerance");
    return out;
  }

  // Record a cell holding `count` zeros. Cells are refined lazily in
  // solve_cell when a circle around them cannot isolate their zeros.
  void locate(const Cell& c, int count, std::vector<Found>& out) const {
    out.push_back({lat_.point(c.u + 0.5 * c.size, c.v + 0.5 * c.size), count, c.size, c});
  }

  // Pole translates within distance r of z.
  std::vector<cplx> poles_near(cplx z, double r) const {
    std::vector<cplx> near;
    for (cplx pz : poles_) {
      cplx d = torus_difference(pz, z, lat_);
      for (int m = -1; m <= 1; ++m)
        for (int k = -1; k <= 1; ++k) {
          cplx q = z + d + lat_.point(m, k);
          if (std::abs(q - z) < r) near.push_back(q);
        }
    }
    return near;
  }

  // Power sums (1/2 pi i) \oint z^j b'/b dz, j = 0, 1, 2, over a circle.
  std::array<cplx, 3> moments(cplx c, double r) const {
    constexpr int pts = 256;
    std::array<cplx, 3> s{};
    for (int k = 0; k < pts; ++k) {
      const cplx e = std::polar(1.0, kTwoPi * k / pts);
      const cplx z = c + r * e;
      const cplx g = f_.derivative(z) / f_(z) * r * e / static_cast<double>(pts);
      const cplx dz = z - c;  // centred for conditioning
      s[0] += g;
      s[1] += dz * g;
      s[2] += dz * dz * g;
    }
    return s;
  }

  std::vector<cplx> solve_cell(const Found& cell) const {
    const Cell& c = cell.cell;
    const cplx centre = cell.z;
    double rho = 0;
    for (auto [du, dv] : std::array<std::pair<double, double>, 4>{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}})
      rho = std::max(rho, std::abs(lat_.point(c.u + du * c.size, c.v + dv * c.size) - centre));

    for (double factor : {1.3, 1.6, 2.0, 1.15}) {
      const double r = factor * rho;
      bool clear = true;
      for (cplx q : poles_near(centre, 2.0 * r)) clear = clear && std::abs(std::abs(q - centre) - r) > 0.1 * rho;
      if (!clear) continue;
      std::array<cplx, 3> s = moments(centre, r);
      for (cplx q : poles_near(centre, r)) {
        const cplx d = q - centre;
        s[0] += 1.0;
        s[1] += d;
        s[2] += d * d;
      }
      const double n0 = s[0].real();
      if (std::abs(s[0] - std::round(n0)) > 0.05 || static_cast<int>(std::round(n0)) != cell.count) continue;
      if (cell.count == 1) {
        const cplx a = centre + s[1];
        return {a + polish(a, rho)};
      }
      if (cell.count == 2) {
        const cplx disc = std::sqrt(2.0 * s[2] - s[1] * s[1]);
        const cplx a = centre + 0.5 * (s[1] + disc), b = centre + 0.5 * (s[1] - disc);
        if (std::abs(a - b) < pol_.double_zero_cluster) {
          const cplx z = polish_double(0.5 * (a + b));
          return {z, z};
        }
        return {a + polish(a, rho), b + polish(b, rho)};
      }
    }
    if (c.size < 1e-9) throw NumericFailure("find_zeros: could not isolate zeros in a minimal cell");
    std::vector<cplx> out;
    const double s = 0.5 * c.size;
    int seen = 0;
    for (auto [du, dv] : std::array<std::pair<double, double>, 4>{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}) {
      Cell sub{c.u + du * s, c.v + dv * s, s};
      const int k = zeros_in(sub);
      seen += k;
      if (k == 0) continue;
      auto got = solve_cell({lat_.point(sub.u + 0.5 * s, sub.v + 0.5 * s), k, s, sub});
      out.insert(out.end(), got.begin(), got.end());
    }
    if (seen != cell.count) throw ContourHit{};
    return out;
  }

  // Newton correction from z; returns the offset so callers keep precision.
  cplx polish(cplx z0, double reach) const {
    cplx z = z0;
    for (int it = 0; it < 60; ++it) {
      const cplx d = f_.derivative(z);
      if (std::abs(d) == 0.0) break;
      const cplx step = f_(z) / d;
      z -= step;
      if (std::abs(z - z0) > reach) throw NumericFailure("find_zeros: Newton left its cell");
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z - z0;
  }

  // A double zero is a simple zero of b'.
  cplx polish_double(cplx z) const {
    const Weierstrass& w = f_.weierstrass();
    for (int it = 0; it < 60; ++it) {
      const cplx u = z - f_.p();
      const cplx dd = -w.wp_prime(u) + w.wp_prime(u + f_.tau_lift());
      if (std::abs(dd) == 0.0) break;
      const cplx step = f_.derivative(z) / dd;
      z -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
  }

  const BFunction& f_;
  const Lattice& lat_;
  const NumericPolicy& pol_;
  std::vector<cplx> poles_;
};

}  // namespace

ZeroPair find_zeros(const BFunction& f) { return ZeroFinder(f).run(); }

double abel_residual(const BFunction& f, const ZeroPair& z) {
  return torus_distance(z.q1 + z.q2, 2.0 * f.p() - f.tau_lift(), f.lattice());
}

// ---------------------------------------------------------------- checks

DoubleZeroReport check_no_double_zero(const BFunction& f) {
  DoubleZeroReport rep;
  const TorsionPoint& t = f.tau();
  const std::int64_t n = t.level();
  rep.min_magnitude = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < 2; ++i)
    for (std::int64_t j = 0; j < 2; ++j) {
      TorsionPoint eta(t.a() + i * n, t.b() + j * n, 2 * n);
      double mag = std::abs(eval_b(f, f.p() - eta.lift(f.lattice())));
      rep.etas.push_back(eta);
      rep.magnitudes.push_back(mag);
      rep.min_magnitude = std::min(rep.min_magnitude, mag);
    }
  rep.pass = rep.min_magnitude >= f.policy().no_double_zero_threshold;
  return rep;
}

ZeroIntersection zero_intersection(const BFunction& f1, const ZeroPair& z1, const BFunction& f2,
                                   const ZeroPair& z2, double tol) {
  if (f1.tau() == f2.tau()) throw InvalidArgument("zero_intersection: tau1 and tau2 coincide");
  const Lattice& lat = f1.lattice();
  ZeroIntersection out;
  out.min_distance = std::numeric_limits<double>::infinity();
  for (cplx a : {z1.q1, z1.q2})
    for (cplx b : {z2.q1, z2.q2}) {
      double d = torus_distance(a, b, lat);
      if (d < out.min_distance) {
        out.min_distance = d;
        if (d <= tol) out.shared = reduce_to_fundamental(a, lat).z;
      }
    }
  out.kind = out.shared ? ZeroIntersection::Kind::SharedPoint : ZeroIntersection::Kind::Disjoint;
  return out;
}

ZeroIntersection zero_intersection(const BFunction& f1, const BFunction& f2, double tol) {
  return zero_intersection(f1, find_zeros(f1), f2, find_zeros(f2), tol);
}

cplx contour_residue(const std::function<cplx(cplx)>& fn, cplx center, double radius, int points) {
  cplx sum = 0;
  for (int k = 0; k < points; ++k) {
    const cplx e = std::polar(1.0, kTwoPi * k / points);
    sum += fn(center + radius * e) * e;
  }
  return sum * radius / static_cast<double>(points);
}

CombinationReport combine_shifted(const BFunction& f1, const BFunction& f2, int samples, std::uint64_t seed) {
  if (f1.tau() == f2.tau()) throw InvalidArgument("combine_shifted: tau1 - tau2 = 0");
  const Lattice& lat = f1.lattice();
  CombinationReport rep;
  const cplx delta = f1.tau_lift() - f2.tau_lift();
  const cplx pole = f1.p() - f1.tau_lift();
  const double r = 1e-3;
  auto shifted2 = [&](cplx z) { return f2(z + delta); };
  const cplx res1 = contour_residue([&](cplx z) { return f1(z); }, pole, r);
  const cplx res2 = contour_residue(shifted2, pole, r);
  rep.c = -res1 / res2;
  auto comb = [&](cplx z) { return f1(z) + rep.c * f2(z + delta); };
  rep.residual_pole = std::abs(contour_residue(comb, pole, r));

  rep.difference = (f1.tau() - f2.tau()).canonical();
  BFunction g = construct_b(TorusPoint{f1.p()}, rep.difference, lat, f1.policy());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> ratios;
  const std::vector<cplx> avoid{f1.p(), f1.p() - f1.tau_lift(), f1.p() - delta, f2.p() - f2.tau_lift() - delta};
  while (static_cast<int>(ratios.size()) < samples) {
    cplx z = f1.p() + lat.point(unit(rng), unit(rng));
    bool ok = true;
    for (cplx a : avoid) ok = ok && torus_distance(z, a, lat) > 0.05;
    if (!ok) continue;
    cplx gz = g(z);
    if (std::abs(gz) < 1e-3) continue;
    ratios.push_back(comb(z) / gz);
  }
  rep.ratio = ratios.front();
  for (cplx q : ratios) rep.ratio_spread = std::max(rep.ratio_spread, std::abs(q - rep.ratio) / std::abs(rep.ratio));
  return rep;
}

cplx nodal_fiber_sum(cplx z, int n) {
  if (n < 2) throw InvalidArgument("nodal_fiber_sum: n must be at least 2");
  const cplx eta = std::polar(1.0, kTwoPi / n);
  cplx power = 1.0, sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx w = power * z;
    const cplx d1 = w - 1.0, d2 = w - eta;
    if (std::abs(d1) < 1e-9 || std::abs(d2) < 1e-9) throw PoleProximity("nodal_fiber_sum: z is at a pole of a term");
    sum += w / (d1 * d2);
    power = std::polar(1.0, kTwoPi * (k + 1) / n);
  }
  return sum;
}

// ------------------------------------------------------- pole-space route

PoleSpaceB::PoleSpaceB(TorusPoint p, const TorsionPoint& t, const Lattice& lat, const NumericPolicy& policy)
    : w_(lat, policy) {
  if (t.order() < 2) throw InvalidArgument("PoleSpaceB: tau has order < 2");
  const TorsionPoint tc = t.canonical();
  const auto n = tc.level();
  p_ = reduce_to_fundamental(p.z, lat).z;
  lift_ = tc.lift(lat);
  wp_t_ = w_.wp(lift_);
  wpp_t_ = w_.wp_prime(lift_);

  // Row 1: residue at p. Row 2: the translate-sum functional at a generic
  // point u0, chosen so no translate sits near 0, t or -t.
  const cplx res = contour_residue([this](cplx z) { return basis(z); }, p_, 1e-3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  cplx sum_f = 0;
  for (;;) {
    cplx z0 = p_ + lat.point(unit(rng), unit(rng));
    bool ok = true;
    sum_f = 0;
    for (std::int64_t k = 0; k < n && ok; ++k) {
      cplx u = z0 - p_ + static_cast<double>(k) * lift_;
      ok = torus_distance(u, 0.0, lat) > 0.05 && torus_distance(u, lift_, lat) > 0.05 &&
           torus_distance(u, -lift_, lat) > 0.05;
      if (ok) sum_f += basis(z0 + static_cast<double>(k) * lift_);
    }
    if (ok) break;
  }
  // [res 0; sum_f n] [alpha; beta] = [1; 0]
  alpha_ = 1.0 / res;
  beta_ = -alpha_ * sum_f / static_cast<double>(n);
}

cplx PoleSpaceB::basis(cplx z) const {
  const cplx u = z - p_;
  return (w_.wp_prime(u) - wpp_t_) / (w_.wp(u) - wp_t_);
}

cplx PoleSpaceB::operator()(cplx z) const { return alpha_ * basis(z) + beta_; }

}  // namespace ellarr
