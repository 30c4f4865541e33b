#pragma once

// Planar constructions: angles from point triples, arcs, chords and the
// chord integral F(x) = ∫₀ˣ dt/√(1−t²) with its inverse S.

#include <algorithm>
#include <array>
#include <cmath>

#include "anglekit/angle.hpp"
#include "anglekit/errors.hpp"
#include "anglekit/exact_scalar.hpp"

namespace anglekit {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Unsigned convex magnitude of ∠POQ, φ ∈ (0, π]. Symmetric in P and Q.
/// Opposite rays give exactly π; perpendicular rays (zero dot product) give
/// exactly π/2.
inline Magnitude angle_from_points(const PlanarPoint& p, const PlanarPoint& o, const PlanarPoint& q) {
  for (const auto* pt : {&p, &o, &q})
    if (!std::isfinite(pt->x) || !std::isfinite(pt->y)) throw domain_error("point coordinates must be finite");
  const double ux = p.x - o.x, uy = p.y - o.y;
  const double vx = q.x - o.x, vy = q.y - o.y;
  const double lu = std::hypot(ux, uy);
  const double lv = std::hypot(vx, vy);
  const double scale = std::max(lu, lv);
  constexpr double degenerate_rel = 1e-12;
  if (lu <= degenerate_rel * scale || lu == 0.0) throw degenerate_vertex_error("P coincides with the vertex O");
  if (lv <= degenerate_rel * scale || lv == 0.0) throw degenerate_vertex_error("Q coincides with the vertex O");

  const double cross = std::abs(ux * vy - uy * vx);
  const double dot = ux * vx + uy * vy;
  if (cross <= degenerate_rel * lu * lv) {
    if (dot > 0) throw zero_angle_error("rays coincide in direction; the zero angle does not exist");
    return Magnitude::from_measure(Measure{ExactScalar::pi()});
  }
  if (dot == 0.0) return Magnitude::from_measure(Measure{ExactScalar::rational(1, 2, 1)});
  return Magnitude::from_measure(Measure{ExactScalar::inexact(std::atan2(cross, dot))});
}

/// |a.φ − b.φ| ≤ tol; with tol = 0 and exact measures, exact equality.
inline bool congruent(const Magnitude& a, const Magnitude& b, double tol) {
  if (!(tol >= 0.0)) throw domain_error("tolerance must be non-negative");
  if (tol == 0.0 && a.phi().is_exact() && b.phi().is_exact()) return std::is_eq(a.phi() <=> b.phi());
  return std::abs(a.phi().to_float() - b.phi().to_float()) <= tol;
}

class ArcSpec {
 public:
  ArcSpec(double radius, Measure measure) : radius_(radius), measure_(measure) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw domain_error("arc radius must be positive");
    if (measure.phi.sign() <= 0 || measure.phi > two_pi()) throw domain_error("arc measure must lie in (0, 2π]");
  }

  double radius() const noexcept { return radius_; }
  const Measure& measure() const noexcept { return measure_; }

 private:
  double radius_;
  Measure measure_;
};

/// s = φ·r
inline double arc_length(const ArcSpec& a) { return a.measure().phi.to_float() * a.radius(); }

namespace detail {

// 15-point Gauss–Kronrod rule with embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
double gauss_kronrod_adaptive(F&& f, double a, double b, double tol, int depth = 0) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[j] * sum;
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  if (std::abs(kronrod - gauss) <= tol || depth >= 40) return kronrod;
  return gauss_kronrod_adaptive(f, a, center, 0.5 * tol, depth + 1) +
         gauss_kronrod_adaptive(f, center, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// F(x) = ∫₀ˣ dt/√(1−t²) on [0, 1], by adaptive quadrature.
///
/// With t = 1 − s² the integral becomes ∫_{√(1−x)}^{1} 2/√(2−s²) ds, whose
/// integrand is smooth on [0, 1], so F(1) needs no special casing.
inline double chord_integral_F(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw domain_error("F is defined on [0, 1] only");
  const double lower = std::sqrt(1.0 - x);
  if (lower >= 1.0) return 0.0;
  auto integrand = [](double s) { return 2.0 / std::sqrt(2.0 - s * s); };
  return detail::gauss_kronrod_adaptive(integrand, lower, 1.0, 1e-12);
}

/// S, the inverse of F: the sine restricted to [0, π/2].
inline double chord_integral_inverse_S(double y) {
  constexpr double half_pi = 1.5707963267948966;
  if (!(y >= 0.0 && y <= half_pi)) throw domain_error("S is defined on [0, π/2] only");
  return std::sin(y);
}

/// cord(α) = 2r·S(φ/2), continued past the diameter as 2r·sin(φ/2).
inline double chord_length(const AngleValue& v, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("radius must be positive");
  const Measure m = measure_of(v);
  if (m.phi.sign() < 0 || m.phi > two_pi()) throw domain_error("chord needs a measure in [0, 2π]");
  ExactScalar half = m.phi * ExactScalar::rational(1, 2);
  const ExactScalar half_pi = ExactScalar::rational(1, 2, 1);
  // sin(h) = sin(π − h); folding keeps the argument inside S's domain
  if (half > half_pi) half = ExactScalar::pi() - half;
  return 2.0 * r * chord_integral_inverse_S(std::clamp(half.to_float(), 0.0, 1.5707963267948966));
}

}  // namespace anglekit
