#pragma once

// Exact real numbers of the form (n/d)·π^e with e in {-1, 0, 1}.
//
// Values that leave that set (π², π + 1, ...) degrade to an Inexact double.
// Inexactness is contagious and is a property of the value, not an error.
// Integer overflow is always reported as arithmetic_overflow.

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "anglekit/errors.hpp"

namespace anglekit {

namespace detail {

using high_float = boost::multiprecision::cpp_bin_float_50;

inline const high_float& high_pi() {
  static const high_float pi = boost::math::constants::pi<high_float>();
  return pi;
}

inline constexpr long double pi_ld = 3.141592653589793238462643383279502884L;

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow("integer overflow in addition");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw arithmetic_overflow("integer overflow in negation");
  return -a;
}

inline std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw arithmetic_overflow("integer overflow");
  return static_cast<std::int64_t>(v);
}

inline std::int64_t abs_gcd(std::int64_t a, std::int64_t b) {
  // std::gcd is undefined when |a| is not representable
  auto ua = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  auto ub = b < 0 ? 0 - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
  return static_cast<std::int64_t>(std::gcd(ua, ub));
}

// floor(a / b) for b != 0
inline __int128 floor_div128(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

class ExactScalar {
 public:
  /// Zero.
  constexpr ExactScalar() = default;

  /// The integer n (implicit, so integer literals read naturally in formulas).
  constexpr ExactScalar(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)

  /// (n/d)·π^pi_exponent, normalized. Throws domain_error on d == 0 or an
  /// exponent outside {-1, 0, 1}.
  static ExactScalar rational(std::int64_t n, std::int64_t d, int pi_exponent = 0) {
    if (d == 0) throw domain_error("zero denominator");
    if (pi_exponent < -1 || pi_exponent > 1) throw domain_error("pi exponent outside {-1, 0, 1}");
    ExactScalar r;
    r.num_ = n;
    r.den_ = d;
    r.pi_exp_ = pi_exponent;
    r.normalize();
    return r;
  }

  static ExactScalar pi() { return rational(1, 1, 1); }

  /// A degraded value. NaN is rejected.
  static ExactScalar inexact(double v) {
    if (std::isnan(v)) throw domain_error("NaN is not a real number");
    ExactScalar r;
    r.exact_ = false;
    r.approx_ = v;
    return r;
  }

  bool is_exact() const noexcept { return exact_; }
  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  int pi_exponent() const noexcept { return pi_exp_; }
  /// Only meaningful when !is_exact().
  double inexact_value() const noexcept { return approx_; }

  bool is_zero() const noexcept { return exact_ ? num_ == 0 : approx_ == 0.0; }
  bool is_integer() const noexcept { return exact_ && den_ == 1 && pi_exp_ == 0; }

  int sign() const noexcept {
    if (exact_) return (num_ > 0) - (num_ < 0);
    return (approx_ > 0) - (approx_ < 0);
  }

  /// Nearest float64. The exact path multiplies by π before dividing.
  double to_float() const {
    if (!exact_) return approx_;
    constexpr std::int64_t exact_limit = std::int64_t{1} << 53;
    if (pi_exp_ == 0) {
      if (std::llabs(num_) <= exact_limit && den_ <= exact_limit)
        return static_cast<double>(num_) / static_cast<double>(den_);
      return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
    }
    if (pi_exp_ == 1)
      return static_cast<double>(static_cast<long double>(num_) * detail::pi_ld / static_cast<long double>(den_));
    return static_cast<double>(static_cast<long double>(num_) /
                               (static_cast<long double>(den_) * detail::pi_ld));
  }

  /// Value with at least 50 significant decimal digits.
  detail::high_float to_high() const {
    if (!exact_) return detail::high_float(approx_);
    detail::high_float v(num_);
    if (pi_exp_ == 1) v *= detail::high_pi();
    v /= detail::high_float(den_);
    if (pi_exp_ == -1) v /= detail::high_pi();
    return v;
  }

  /// Structural equality: both exact with identical fields, or both Inexact
  /// with the same double. Use cmp() for numeric equivalence.
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) noexcept {
    if (a.exact_ != b.exact_) return false;
    if (!a.exact_) return a.approx_ == b.approx_;
    return a.num_ == b.num_ && a.den_ == b.den_ && a.pi_exp_ == b.pi_exp_;
  }

  friend ExactScalar operator-(const ExactScalar& a) {
    if (!a.exact_) return inexact(-a.approx_);
    ExactScalar r = a;
    r.num_ = detail::checked_neg(a.num_);
    return r;
  }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.reciprocal(); }

  ExactScalar reciprocal() const {
    if (is_zero()) throw domain_error("division by zero");
    if (!exact_) return inexact(1.0 / approx_);
    return rational(den_, num_, -pi_exp_);
  }

  friend std::weak_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = detail::checked_neg(num_);
      den_ = detail::checked_neg(den_);
    }
    if (num_ == 0) {
      den_ = 1;
      pi_exp_ = 0;
      return;
    }
    const std::int64_t g = detail::abs_gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  static ExactScalar degrade(const detail::high_float& v) { return inexact(v.convert_to<double>()); }

  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  int pi_exp_ = 0;
  double approx_ = 0.0;
};

inline ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (!a.exact_ || !b.exact_) return ExactScalar::degrade(a.to_high() * b.to_high());
  if (a.num_ == 0 || b.num_ == 0) return ExactScalar{};
  const int e = a.pi_exp_ + b.pi_exp_;
  if (e < -1 || e > 1) return ExactScalar::degrade(a.to_high() * b.to_high());
  const std::int64_t g1 = detail::abs_gcd(a.num_, b.den_);
  const std::int64_t g2 = detail::abs_gcd(b.num_, a.den_);
  ExactScalar r;
  r.num_ = detail::checked_mul(a.num_ / g1, b.num_ / g2);
  r.den_ = detail::checked_mul(a.den_ / g2, b.den_ / g1);
  r.pi_exp_ = e;
  r.normalize();
  return r;
}

inline ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  if (!a.exact_ || !b.exact_) return ExactScalar::degrade(a.to_high() + b.to_high());
  if (a.num_ == 0) return b;
  if (b.num_ == 0) return a;
  if (a.pi_exp_ != b.pi_exp_) return ExactScalar::degrade(a.to_high() + b.to_high());
  const std::int64_t g = detail::abs_gcd(a.den_, b.den_);
  ExactScalar r;
  r.num_ = detail::checked_add(detail::checked_mul(a.num_, b.den_ / g), detail::checked_mul(b.num_, a.den_ / g));
  r.den_ = detail::checked_mul(a.den_, b.den_ / g);
  r.pi_exp_ = a.pi_exp_;
  r.normalize();
  return r;
}

/// Total order consistent with the real numbers. Exact operands sharing a
/// π exponent are compared rationally; everything else at 50 digits.
inline std::weak_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  if (a.exact_ && b.exact_) {
    if (a.pi_exp_ == b.pi_exp_ || a.num_ == 0 || b.num_ == 0) {
      if (a.num_ == 0 || b.num_ == 0) return a.sign() <=> b.sign();
      const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
      const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  }
  const auto ha = a.to_high();
  const auto hb = b.to_high();
  if (ha < hb) return std::weak_ordering::less;
  if (hb < ha) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

inline ExactScalar mul(const ExactScalar& a, const ExactScalar& b) { return a * b; }
inline ExactScalar add(const ExactScalar& a, const ExactScalar& b) { return a + b; }
inline double to_float(const ExactScalar& a) { return a.to_float(); }
inline std::weak_ordering cmp(const ExactScalar& a, const ExactScalar& b) { return a <=> b; }

/// floor(a / b) as an integer; b must be nonzero.
inline std::int64_t floor_quotient(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) throw domain_error("division by zero");
  if (a.is_exact() && b.is_exact() && (a.pi_exponent() == b.pi_exponent() || a.is_zero())) {
    const __int128 n = static_cast<__int128>(a.numerator()) * b.denominator();
    const __int128 d = static_cast<__int128>(a.denominator()) * b.numerator();
    return detail::narrow(detail::floor_div128(n, d));
  }
  const auto q = floor(a.to_high() / b.to_high());
  if (q > detail::high_float(std::numeric_limits<std::int64_t>::max()) ||
      q < detail::high_float(std::numeric_limits<std::int64_t>::min()))
    throw arithmetic_overflow("quotient exceeds 64-bit range");
  return q.convert_to<std::int64_t>();
}

/// `x` rounded to `digits` significant decimal digits (printf %g style).
inline std::string format_float(double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Renders `n/d`, `nπ/d`, `n/d·π⁻¹`; Inexact as a 17-digit decimal.
/// With `ascii`, π becomes `pi` and the inverse marker `*pi^-1`.
inline std::string to_string(const ExactScalar& x, bool ascii = false) {
  if (!x.is_exact()) return format_float(x.inexact_value());
  const std::string pi_sym = ascii ? "pi" : "π";
  const std::int64_t n = x.numerator();
  const std::int64_t d = x.denominator();
  auto plain = [&] { return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d); };
  switch (x.pi_exponent()) {
    case 1: {
      std::string s = n == 1 ? pi_sym : n == -1 ? "-" + pi_sym : std::to_string(n) + pi_sym;
      if (d != 1) s += "/" + std::to_string(d);
      return s;
    }
    case -1:
      return plain() + (ascii ? "*pi^-1" : "·π⁻¹");
    default:
      return plain();
  }
}

}  // namespace anglekit
