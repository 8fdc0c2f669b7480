#pragma once

// The elliptic function b_{tau,p}: simple poles at p and p - tau, residue
// +1 at p, and vanishing sum over the translates by tau.

#include <functional>
#include <optional>
#include <vector>

#include "ellarr/numeric_policy.hpp"
#include "ellarr/theta.hpp"
#include "ellarr/torus.hpp"

namespace ellarr {

class BFunction {
 public:
  const Lattice& lattice() const { return w_.lattice(); }
  const Weierstrass& weierstrass() const { return w_; }
  const NumericPolicy& policy() const { return policy_; }
  cplx p() const { return p_; }
  const TorsionPoint& tau() const { return tau_; }  ///< canonical form, level = order
  std::int64_t order() const { return tau_.level(); }
  cplx tau_lift() const { return lift_; }
  cplx constant() const { return c_; }
  /// False for variants whose constant was shifted away from the zero-sum value.
  bool normalized() const { return normalized_; }
  /// The two poles p and p - tau as reduced torus points.
  std::pair<cplx, cplx> poles() const;

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;

  /// b + delta. Keeps the poles, breaks the zero-sum normalization.
  BFunction shifted(cplx delta) const;

 private:
  friend BFunction construct_b(TorusPoint p, const TorsionPoint& t, const Lattice& lat,
                               const NumericPolicy& policy, std::pair<std::int64_t, std::int64_t> lift_shift);
  BFunction(Weierstrass w, NumericPolicy policy, cplx p, TorsionPoint tau, cplx lift, cplx c)
      : w_(std::move(w)), policy_(policy), p_(p), tau_(tau), lift_(lift), c_(c) {}

  Weierstrass w_;
  NumericPolicy policy_;
  cplx p_;
  TorsionPoint tau_;
  cplx lift_;
  cplx c_;
  bool normalized_ = true;
};

/// b(z) = zeta(z - p) - zeta(z - p + t_lift) + c with c = eta(n t_lift)/n.
/// t_lift = (a + b tau)/n for the canonical 0 <= a, b < n, plus the optional
/// lattice vector lift_shift (i + j tau). The zero translate sum is verified
/// numerically before returning; a failed check throws NumericFailure.
BFunction construct_b(TorusPoint p, const TorsionPoint& t, const Lattice& lat,
                      const NumericPolicy& policy = {},
                      std::pair<std::int64_t, std::int64_t> lift_shift = {0, 0});

/// Throws PoleProximity within policy.pole_guard of a pole.
cplx eval_b(const BFunction& f, cplx z);

/// sum_{k=0}^{n-1} b(z + k tau). Throws PoleProximity when a translate is
/// within policy.translate_pole_guard of a pole.
cplx translate_sum(const BFunction& f, cplx z);

/// sum over lambda in J(E)_m of b(z + lambda); requires n | m.
cplx full_level_sum(const BFunction& f, cplx z, std::int64_t m);

struct ZeroPair {
  cplx q1, q2;
  bool double_zero = false;
  double deriv1 = 0, deriv2 = 0;  ///< |b'(q_i)|
  double residual1 = 0, residual2 = 0;  ///< |b(q_i)|
  int grid_attempts = 0;  ///< contour grids tried before none touched a pole or zero
};

/// Both zeros of f. Coarse pass: winding numbers on a grid of cells over a
/// period parallelogram, subdividing cells that contain zeros. Fine pass:
/// Newton with b' = -wp(z - p) + wp(z - p + t_lift). Throws NumericFailure
/// when the zero count is not 2 or refinement stalls.
ZeroPair find_zeros(const BFunction& f);

/// q1 + q2 - (2p - tau) reduced to the nearest lattice translate.
double abel_residual(const BFunction& f, const ZeroPair& z);

struct DoubleZeroReport {
  std::vector<TorsionPoint> etas;   ///< the four eta with 2 eta = tau, in J(E)_{2n}
  std::vector<double> magnitudes;   ///< |b(p - eta)|
  double min_magnitude = 0;
  bool pass = false;                ///< min_magnitude >= threshold
};

DoubleZeroReport check_no_double_zero(const BFunction& f);

struct ZeroIntersection {
  enum class Kind { Disjoint, SharedPoint } kind = Kind::Disjoint;
  std::optional<cplx> shared;
  double min_distance = 0;  ///< smallest torus distance between a zero of f1 and a zero of f2
};

ZeroIntersection zero_intersection(const BFunction& f1, const ZeroPair& z1, const BFunction& f2,
                                   const ZeroPair& z2, double tol);
ZeroIntersection zero_intersection(const BFunction& f1, const BFunction& f2, double tol);

/// Residue of fn at center by the trapezoid rule on a small circle.
cplx contour_residue(const std::function<cplx(cplx)>& fn, cplx center, double radius, int points = 128);

/// b_{tau1,p}(z) + c b_{tau2,p}(z + (tau1 - tau2)), with c chosen to cancel
/// the pole at p - tau1, compared against b_{tau1 - tau2, p}.
struct CombinationReport {
  cplx c;
  cplx ratio;          ///< combination / b_{tau1 - tau2, p} at the first sample point
  double ratio_spread = 0;  ///< max relative deviation of the ratio over the samples
  double residual_pole = 0; ///< |residue| left at p - tau1 after cancellation
  TorsionPoint difference{0, 0, 1};
};

CombinationReport combine_shifted(const BFunction& f1, const BFunction& f2, int samples = 10,
                                  std::uint64_t seed = 1);

/// sum_{k=0}^{n-1} eta^k z / ((eta^k z - 1)(eta^k z - eta)), eta = exp(2 pi i / n).
cplx nodal_fiber_sum(cplx z, int n);

/// The same sum for an arbitrary scalar type and a supplied root of unity.
template <class T>
T nodal_fiber_sum_with_root(const T& z, const T& eta, int n) {
  const T one(1);
  T sum(0);
  T power = one;
  for (int k = 0; k < n; ++k) {
    T w = power * z;
    sum = sum + w / ((w - one) * (w - eta));
    power = power * eta;
  }
  return sum;
}

/// The alternative construction: b = alpha f + beta on the pole space
/// spanned by 1 and f(u) = (wp'(u) - wp'(t)) / (wp(u) - wp(t)), u = z - p,
/// with (alpha, beta) solving residue(b, p) = 1 and sum_k b(z0 + k t) = 0.
class PoleSpaceB {
 public:
  PoleSpaceB(TorusPoint p, const TorsionPoint& t, const Lattice& lat, const NumericPolicy& policy = {});
  cplx operator()(cplx z) const;
  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }

 private:
  cplx basis(cplx z) const;
  Weierstrass w_;
  cplx p_, lift_;
  cplx wp_t_, wpp_t_;
  cplx alpha_, beta_;
};

}  // namespace ellarr
