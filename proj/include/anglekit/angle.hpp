#pragma once

// Reference angles, numerical values, angular measures and magnitudes.
//
// An angular magnitude is not a number. What gets written down is either
//   * a numerical value {α} relative to a reference angle (AngleValue), or
//   * the angular measure φ, a pure number with s = φ·r (Measure).
// They are linked by φ = (2π/p)·{α}, p being the full-circle count of the
// reference angle (2π for radian, 360 for degree, ...).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "anglekit/errors.hpp"
#include "anglekit/exact_scalar.hpp"

namespace anglekit {

/// A named fraction of the full circle. `full_circle()` is p with 2ϖ = p·ε.
class ReferenceAngle {
 public:
  /// Throws domain_error unless p is exact and positive.
  ReferenceAngle(std::string name, std::string symbol, ExactScalar full_circle, std::string ascii_symbol = {})
      : name_(std::move(name)),
        symbol_(std::move(symbol)),
        ascii_symbol_(ascii_symbol.empty() ? symbol_ : std::move(ascii_symbol)),
        p_(full_circle) {
    if (!p_.is_exact()) throw domain_error("full-circle value of a reference angle must be exact");
    if (p_.sign() <= 0) throw domain_error("full-circle value of a reference angle must be positive");
  }

  const std::string& name() const noexcept { return name_; }
  const std::string& symbol() const noexcept { return symbol_; }
  const std::string& ascii_symbol() const noexcept { return ascii_symbol_; }
  const std::string& symbol(bool ascii) const noexcept { return ascii ? ascii_symbol_ : symbol_; }
  const ExactScalar& full_circle() const noexcept { return p_; }

  friend bool operator==(const ReferenceAngle& a, const ReferenceAngle& b) {
    return a.symbol_ == b.symbol_ && a.p_ == b.p_;
  }

 private:
  std::string name_;
  std::string symbol_;
  std::string ascii_symbol_;
  ExactScalar p_;
};

inline const ReferenceAngle& radian() {
  static const ReferenceAngle r("radian", "rad", ExactScalar::rational(2, 1, 1));
  return r;
}
inline const ReferenceAngle& degree() {
  static const ReferenceAngle r("degree", "°", 360, "deg");
  return r;
}
inline const ReferenceAngle& gon() {
  static const ReferenceAngle r("gon", "gon", 400);
  return r;
}
inline const ReferenceAngle& turn() {
  static const ReferenceAngle r("turn", "turn", 1);
  return r;
}
inline const ReferenceAngle& arcminute() {
  static const ReferenceAngle r("arcminute", "′", 21600, "arcmin");
  return r;
}
inline const ReferenceAngle& arcsecond() {
  static const ReferenceAngle r("arcsecond", "″", 1296000, "arcsec");
  return r;
}

/// The six builtin reference angles, in a fixed order.
inline std::span<const ReferenceAngle> builtin_references() {
  static const std::array<ReferenceAngle, 6> all{radian(), degree(), gon(), turn(), arcminute(), arcsecond()};
  return all;
}

/// Looks up a builtin by symbol or ASCII alias (`rad`, `°`, `deg`, `gon`,
/// `turn`, `′`, `arcmin`, `″`, `arcsec`).
inline std::optional<ReferenceAngle> find_reference(std::string_view symbol) {
  for (const auto& r : builtin_references())
    if (symbol == r.symbol() || symbol == r.ascii_symbol()) return r;
  return std::nullopt;
}

/// Builtin reference with full-circle count p, or a custom one named after p.
inline ReferenceAngle reference_for_period(const ExactScalar& p) {
  for (const auto& r : builtin_references())
    if (r.full_circle() == p) return r;
  const std::string sym = "[p=" + to_string(p) + "]";
  return ReferenceAngle("custom", sym, p, "[p=" + to_string(p, true) + "]");
}

/// A numerical value {α} with its reference angle. The only angle type that
/// is ever printed with a unit symbol.
struct AngleValue {
  ExactScalar value;
  ReferenceAngle ref;

  friend bool operator==(const AngleValue&, const AngleValue&) = default;
};

/// Angular measure φ: a pure number, never printed with a unit.
struct Measure {
  ExactScalar phi;

  friend bool operator==(const Measure&, const Measure&) = default;
};

inline ExactScalar two_pi() { return ExactScalar::rational(2, 1, 1); }

/// An angular magnitude, stored as its measure φ ∈ (0, 2π]. The zero angle
/// is unrepresentable.
class Magnitude {
 public:
  static Magnitude from_measure(const Measure& m) {
    if (m.phi.sign() <= 0 || m.phi > two_pi())
      throw domain_error("angular magnitude needs a measure in (0, 2π], got " + to_string(m.phi));
    return Magnitude(m);
  }

  const Measure& measure() const noexcept { return measure_; }
  const ExactScalar& phi() const noexcept { return measure_.phi; }

  friend bool operator==(const Magnitude&, const Magnitude&) = default;

 private:
  explicit Magnitude(Measure m) : measure_(m) {}
  Measure measure_;
};

/// φ = (2π/p)·{α}
inline Measure measure_of(const AngleValue& v) { return Measure{two_pi() / v.ref.full_circle() * v.value}; }

/// {α} = (p/2π)·φ
inline AngleValue value_from_measure(const Measure& m, const ReferenceAngle& target) {
  return AngleValue{target.full_circle() / two_pi() * m.phi, target};
}

/// {α}_target = (p_target / p_source)·{α}_source
inline AngleValue convert(const AngleValue& v, const ReferenceAngle& target) {
  if (v.ref.full_circle() == target.full_circle()) return AngleValue{v.value, target};
  return AngleValue{target.full_circle() / v.ref.full_circle() * v.value, target};
}

/// Coefficient of the straight angle ϖ: α = (φ/π)·ϖ.
inline ExactScalar magnitude_in_straight_angles(const Magnitude& m) { return m.phi() / ExactScalar::pi(); }

/// Addition of magnitudes modulo the straight angle. Operands must lie in
/// (0, π]; the result does too (π ⊕ π is π, not zero).
inline Magnitude semigroup_add(const Magnitude& a, const Magnitude& b) {
  const ExactScalar pi = ExactScalar::pi();
  if (a.phi() > pi || b.phi() > pi)
    throw domain_error("magnitude addition is defined for measures in (0, π] only");
  ExactScalar sum = a.phi() + b.phi();
  if (sum > pi) sum = sum - pi;
  return Magnitude::from_measure(Measure{sum});
}

/// Value congruent to `v` modulo p, in [0, p).
inline AngleValue reduce_principal(const AngleValue& v) {
  const ExactScalar& p = v.ref.full_circle();
  const std::int64_t k = floor_quotient(v.value, p);
  if (k == 0) return v;
  ExactScalar r = v.value - ExactScalar(k) * p;
  // Inexact residues can land one rounding step outside [0, p).
  if (!r.is_exact()) {
    if (r.sign() < 0) r = ExactScalar::inexact(0.0);
    if (r >= p) r = ExactScalar::inexact(std::nextafter(p.to_float(), 0.0));
  }
  return AngleValue{r, v.ref};
}

enum class AngleClass { zero, acute, right, obtuse, straight, reflex, perigon };

inline std::string_view class_name(AngleClass c) {
  switch (c) {
    case AngleClass::zero: return "zero angle";
    case AngleClass::acute: return "acute angle";
    case AngleClass::right: return "right angle";
    case AngleClass::obtuse: return "obtuse angle";
    case AngleClass::straight: return "straight angle";
    case AngleClass::reflex: return "reflex angle";
    case AngleClass::perigon: return "perigon";
  }
  return "";
}

/// Classification by principal measure. The input must lie in [0, p];
/// exact inputs are compared exactly, inexact ones with tolerance 1e-12·p.
inline AngleClass classify(const AngleValue& v) {
  const ExactScalar& p = v.ref.full_circle();
  const ExactScalar quarter = p * ExactScalar::rational(1, 4);
  const ExactScalar half = p * ExactScalar::rational(1, 2);
  if (v.value.is_exact()) {
    if (v.value.sign() < 0 || v.value > p) throw domain_error("classification needs a value in [0, p]");
    if (v.value.is_zero()) return AngleClass::zero;
    if (v.value < quarter) return AngleClass::acute;
    if (std::is_eq(v.value <=> quarter)) return AngleClass::right;
    if (v.value < half) return AngleClass::obtuse;
    if (std::is_eq(v.value <=> half)) return AngleClass::straight;
    if (v.value < p) return AngleClass::reflex;
    return AngleClass::perigon;
  }
  const double x = v.value.to_float();
  const double pf = p.to_float();
  const double tol = 1e-12 * pf;
  if (x < -tol || x > pf + tol) throw domain_error("classification needs a value in [0, p]");
  auto near = [tol, x](double b) { return std::abs(x - b) <= tol; };
  if (near(0.0)) return AngleClass::zero;
  if (near(pf / 4)) return AngleClass::right;
  if (near(pf / 2)) return AngleClass::straight;
  if (near(pf)) return AngleClass::perigon;
  if (x < pf / 4) return AngleClass::acute;
  if (x < pf / 2) return AngleClass::obtuse;
  return AngleClass::reflex;
}

}  // namespace anglekit
