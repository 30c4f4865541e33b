#pragma once

// Trigonometric functions parameterized by the principal period p:
//   Sin_p x = sin((2π/p)·x),  Cos_p x = cos((2π/p)·x),
//   Arcsin_p x = (p/2π)·arcsin x,  Arccos_p x = (p/2π)·arccos x.
// p = 2π gives the ordinary functions.
//
// Arcsin_p returns values in [−p/4, p/4] and Arccos_p in [0, p/2], the
// classical ranges scaled by p/2π.

#include <cmath>
#include <optional>
#include <utility>

#include "anglekit/angle.hpp"
#include "anglekit/errors.hpp"
#include "anglekit/exact_scalar.hpp"

namespace anglekit {

enum class TrigKind { sin, cos, tan };
enum class InverseTrigKind { arcsin, arccos };

struct PeriodizedFunction {
  TrigKind kind;
  ExactScalar period;

  PeriodizedFunction(TrigKind k, ExactScalar p) : kind(k), period(p) {
    if (!period.is_exact() || period.sign() <= 0) throw domain_error("period must be exact and positive");
  }
};

struct UnitCirclePoint {
  double re = 1.0;
  double im = 0.0;
};

namespace detail {

struct SinCos {
  double sin;
  double cos;
};

// Rotates (sin θ, cos θ) by `quadrant` quarter turns.
inline SinCos rotate_quadrant(double s, double c, std::int64_t quadrant) {
  switch (((quadrant % 4) + 4) % 4) {
    case 1: return {c, -s};
    case 2: return {-s, -c};
    case 3: return {-c, s};
    default: return {s, c};
  }
}

// sin/cos of 2π·(num/den) turns; exact quadrant bookkeeping, so quarter
// turns produce exact zeros.
inline SinCos sincos_turns(std::int64_t num, std::int64_t den) {
  // quarter-turn units: t = q + rem/den with |rem| <= den/2
  const __int128 quarters = static_cast<__int128>(num) * 4;
  __int128 q = floor_div128(quarters, den);
  __int128 rem = quarters - q * den;
  if (2 * rem > den) {
    ++q;
    rem -= den;
  }
  const long double theta = 0.5L * pi_ld * static_cast<long double>(rem) / static_cast<long double>(den);
  const double th = static_cast<double>(theta);
  return rotate_quadrant(std::sin(th), std::cos(th), static_cast<std::int64_t>(q % 4));
}

// sin/cos of 2π·x/p for a float x and a float period p that is exactly
// representable. fmod is exact, and so is the quadrant split.
inline SinCos sincos_exact_period(double x, double p) {
  double r = std::fmod(x, p);
  if (r < 0) r += p;  // may round up to p; the quadrant arithmetic absorbs it
  const double quarter = p / 4;
  const double q = std::nearbyint(r / quarter);
  const double rem = r - q * quarter;
  const long double theta = 2.0L * pi_ld * static_cast<long double>(rem) / static_cast<long double>(p);
  const double th = static_cast<double>(theta);
  return rotate_quadrant(std::sin(th), std::cos(th), static_cast<std::int64_t>(q));
}

// Whether p/4 is an exactly representable double that equals p/4.
inline std::optional<double> exact_float_period(const ExactScalar& p) {
  if (!p.is_exact() || p.pi_exponent() != 0) return std::nullopt;
  const std::int64_t d = p.denominator();
  if ((d & (d - 1)) != 0) return std::nullopt;  // not a power of two
  if (std::llabs(p.numerator()) > (std::int64_t{1} << 50)) return std::nullopt;
  return p.to_float();
}

inline SinCos sincos_periodized(const ExactScalar& period, double x) {
  if (auto pf = exact_float_period(period)) return sincos_exact_period(x, *pf);
  if (period == two_pi()) return {std::sin(x), std::cos(x)};
  // 2π/p·x in extended precision, then the platform's reduction mod 2π
  long double scale;
  if (period.is_exact() && period.pi_exponent() == 1)
    scale = 2.0L * static_cast<long double>(period.denominator()) / static_cast<long double>(period.numerator());
  else
    scale = 2.0L * pi_ld / static_cast<long double>(period.to_float());
  const double th = static_cast<double>(scale * static_cast<long double>(x));
  return {std::sin(th), std::cos(th)};
}

}  // namespace detail

inline constexpr double tan_pole_guard = 1e-10;

/// f.kind applied to (2π/p)·x. The argument is reduced modulo p before
/// scaling whenever p is exactly representable.
inline double eval_periodized(const PeriodizedFunction& f, double x) {
  if (!std::isfinite(x)) throw domain_error("argument must be finite");
  const auto sc = detail::sincos_periodized(f.period, x);
  switch (f.kind) {
    case TrigKind::sin: return sc.sin;
    case TrigKind::cos: return sc.cos;
    case TrigKind::tan:
      // |cos| approximates the distance to the nearest pole in scaled space
      if (std::abs(sc.cos) < tan_pole_guard) throw pole_error("tangent evaluated at a pole");
      return sc.sin / sc.cos;
  }
  return 0.0;
}

inline double sin_p(const ExactScalar& p, double x) { return eval_periodized({TrigKind::sin, p}, x); }
inline double cos_p(const ExactScalar& p, double x) { return eval_periodized({TrigKind::cos, p}, x); }
inline double tan_p(const ExactScalar& p, double x) { return eval_periodized({TrigKind::tan, p}, x); }

/// (p/2π)·arcsin x or (p/2π)·arccos x, as a value relative to the reference
/// angle with full-circle count p. Arguments 0, ±1/2, ±1 give exact results.
inline AngleValue eval_inverse(InverseTrigKind kind, const ExactScalar& p, double x) {
  if (!p.is_exact() || p.sign() <= 0) throw domain_error("period must be exact and positive");
  if (!(x >= -1.0 && x <= 1.0)) throw domain_error("inverse sine/cosine needs an argument in [-1, 1]");
  const ReferenceAngle ref = reference_for_period(p);

  // arcsin of the special arguments, in turns
  std::optional<ExactScalar> asin_turns;
  if (x == 0.0) asin_turns = ExactScalar(0);
  else if (x == 0.5) asin_turns = ExactScalar::rational(1, 12);
  else if (x == -0.5) asin_turns = ExactScalar::rational(-1, 12);
  else if (x == 1.0) asin_turns = ExactScalar::rational(1, 4);
  else if (x == -1.0) asin_turns = ExactScalar::rational(-1, 4);
  if (asin_turns) {
    // arccos x = π/2 − arcsin x
    const ExactScalar turns =
        kind == InverseTrigKind::arcsin ? *asin_turns : ExactScalar::rational(1, 4) - *asin_turns;
    return AngleValue{turns * p, ref};
  }
  const long double radians = kind == InverseTrigKind::arcsin ? std::asin(static_cast<long double>(x))
                                                              : std::acos(static_cast<long double>(x));
  long double scale;
  if (p.pi_exponent() == 1)
    scale = static_cast<long double>(p.numerator()) / (2.0L * static_cast<long double>(p.denominator()));
  else
    scale = static_cast<long double>(p.to_float()) / (2.0L * detail::pi_ld);
  return AngleValue{ExactScalar::inexact(static_cast<double>(scale * radians)), ref};
}

/// (Cos_p x)² + (Sin_p x)² − 1
inline double pythagorean_residual(const ExactScalar& p, double x) {
  const auto sc = detail::sincos_periodized(p, x);
  return sc.cos * sc.cos + sc.sin * sc.sin - 1.0;
}

/// e^{iφ} for φ = measure_of(v).
inline UnitCirclePoint phase(const AngleValue& v) {
  const ExactScalar& p = v.ref.full_circle();
  if (v.value.is_exact() && (v.value.is_zero() || v.value.pi_exponent() == p.pi_exponent())) {
    const ExactScalar turns = v.value / p;
    const auto sc = detail::sincos_turns(turns.numerator(), turns.denominator());
    return {sc.cos, sc.sin};
  }
  const ExactScalar phi = measure_of(v).phi;
  if (phi.is_exact() && phi.pi_exponent() == 1) {
    const ExactScalar turns = phi / two_pi();
    const auto sc = detail::sincos_turns(turns.numerator(), turns.denominator());
    return {sc.cos, sc.sin};
  }
  const double th = phi.to_float();
  return {std::cos(th), std::sin(th)};
}

}  // namespace anglekit
