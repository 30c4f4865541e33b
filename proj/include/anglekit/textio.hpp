#pragma once

// Parsing and formatting of angle literals and of the small expression
// language read by the linter.
//
// Angle literal grammar:
//   angle      := number ws? unit | dms
//   number     := sign? (decimal | rational)? pi_factor? ("/" positive_integer)?
//   rational   := integer "/" positive_integer
//   pi_factor  := ws? ("·" | "*")? ws? ("π" | "pi") ("⁻¹" | "^-1")?
//   unit       := "rad" | "°" | "deg" | "gon" | "turn" | "′" | "arcmin" | "″" | "arcsec"
//   dms        := sign? integer ("°"|"d") (integer ("′"|"m") (decimal ("″"|"s"))?)?
// A number needs a decimal, a rational or a π factor. The trailing
// "/ positive_integer" after π admits the formatter's `3π/4` spelling.
//
// Decimals with at most 15 significant digits are exact; longer ones are
// Inexact. Error positions are 0-based byte offsets.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anglekit/angle.hpp"
#include "anglekit/errors.hpp"
#include "anglekit/exact_scalar.hpp"

namespace anglekit {

enum class AngleForm { decimal, symbolic_pi, dms };

struct AngleLiteral {
  std::string raw;
  AngleValue parsed;
  AngleForm form;
};

namespace textio_detail {

inline constexpr std::string_view pi_utf8 = "π";
inline constexpr std::string_view middle_dot = "·";
inline constexpr std::string_view degree_sign = "°";
inline constexpr std::string_view prime = "′";
inline constexpr std::string_view double_prime = "″";
inline constexpr std::string_view superscript_minus_one = "⁻¹";

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Length of a well-formed UTF-8 sequence at `s`, or 0 if malformed.
inline std::size_t utf8_length(std::string_view s) {
  if (s.empty()) return 0;
  const auto b0 = static_cast<unsigned char>(s[0]);
  std::size_t n;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0 && b0 >= 0xC2) n = 2;
  else if ((b0 & 0xF0) == 0xE0) n = 3;
  else if ((b0 & 0xF8) == 0xF0 && b0 <= 0xF4) n = 4;
  else return 0;
  if (s.size() < n) return 0;
  for (std::size_t i = 1; i < n; ++i)
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) return 0;
  return n;
}

// Non-ASCII characters that are notation, not letters.
inline bool is_reserved_symbol(std::string_view ch) {
  return ch == pi_utf8 || ch == middle_dot || ch == degree_sign || ch == prime || ch == double_prime ||
         ch == "⁻" || ch == "¹";
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  std::string_view rest() const { return text_.substr(std::min(pos_, text_.size())); }
  std::string_view text() const { return text_; }

  bool starts_with(std::string_view s) const { return rest().substr(0, s.size()) == s; }

  bool consume(std::string_view s) {
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }

  // Consumes an ASCII word only when it is not the prefix of a longer identifier.
  bool consume_word(std::string_view w) {
    if (!starts_with(w)) return false;
    if (identifier_char_at(pos_ + w.size())) return false;
    pos_ += w.size();
    return true;
  }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  // Identifier characters: ASCII letters, digits, '_', and non-ASCII
  // letters (anything well-formed that is not a reserved symbol).
  std::size_t identifier_char_len(std::size_t at, bool first) const {
    if (at >= text_.size()) return 0;
    const char c = text_[at];
    if (is_ascii_alpha(c) || c == '_') return 1;
    if (!first && is_digit(c)) return 1;
    if (static_cast<unsigned char>(c) < 0x80) return 0;
    const std::size_t n = utf8_length(text_.substr(at));
    if (n == 0 || is_reserved_symbol(text_.substr(at, n))) return 0;
    return n;
  }
  bool identifier_char_at(std::size_t at) const { return identifier_char_len(at, false) != 0; }

  std::string_view take_identifier() {
    const std::size_t start = pos_;
    std::size_t n = identifier_char_len(pos_, true);
    while (n != 0) {
      pos_ += n;
      n = identifier_char_len(pos_, false);
    }
    return text_.substr(start, pos_ - start);
  }

  std::string_view take_digits() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    return text_.substr(start, pos_ - start);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline ExactScalar decimal_to_scalar(std::string_view int_digits, std::string_view frac_digits, int exp10,
                                     std::string_view literal) {
  std::string digits = std::string(int_digits) + std::string(frac_digits);
  long long e = static_cast<long long>(exp10) - static_cast<long long>(frac_digits.size());
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return ExactScalar{};
  digits.erase(0, first);
  while (!digits.empty() && digits.back() == '0') {
    digits.pop_back();
    ++e;
  }
  auto inexact = [&] {
    // strtod saturates to ±inf or 0 where from_chars would report out of range
    return ExactScalar::inexact(std::strtod(std::string(literal).c_str(), nullptr));
  };
  if (digits.size() > 15) return inexact();
  std::int64_t mantissa = 0;
  for (char c : digits) mantissa = mantissa * 10 + (c - '0');
  if (e >= 0) {
    if (e > 18) return inexact();
    __int128 v = mantissa;
    for (long long i = 0; i < e; ++i) v *= 10;
    if (v > std::numeric_limits<std::int64_t>::max()) return inexact();
    return ExactScalar(static_cast<std::int64_t>(v));
  }
  if (-e > 18) return inexact();
  std::int64_t den = 1;
  for (long long i = 0; i < -e; ++i) den *= 10;
  return ExactScalar::rational(mantissa, den);
}

// sign? digits ("." digits?)? | sign? "." digits, with optional exponent.
// Returns nullopt (cursor untouched) when no digits are present.
struct DecimalToken {
  ExactScalar value;
  bool is_integer;  // no fraction, no exponent
  std::int64_t integer_value;
};

inline std::optional<DecimalToken> parse_unsigned_decimal(Cursor& c) {
  const std::size_t start = c.pos();
  const std::string_view int_digits = c.take_digits();
  std::string_view frac_digits;
  bool has_point = false;
  if (c.peek() == '.' && (is_digit(c.peek(1)) || !int_digits.empty())) {
    has_point = true;
    c.reset(c.pos() + 1);
    frac_digits = c.take_digits();
  }
  if (int_digits.empty() && frac_digits.empty()) {
    c.reset(start);
    return std::nullopt;
  }
  int exp10 = 0;
  bool has_exp = false;
  if ((c.peek() == 'e' || c.peek() == 'E')) {
    const std::size_t save = c.pos();
    c.reset(c.pos() + 1);
    bool neg = false;
    if (c.peek() == '+' || c.peek() == '-') {
      neg = c.peek() == '-';
      c.reset(c.pos() + 1);
    }
    const std::string_view ed = c.take_digits();
    if (ed.empty() || c.identifier_char_at(c.pos())) {
      c.reset(save);
    } else {
      has_exp = true;
      long long v = 0;
      for (char ch : ed) v = std::min<long long>(v * 10 + (ch - '0'), 100000);
      exp10 = static_cast<int>(neg ? -v : v);
    }
  }
  const std::string_view literal = c.text().substr(start, c.pos() - start);
  DecimalToken tok{decimal_to_scalar(int_digits, frac_digits, exp10, literal), false, 0};
  if (!has_point && !has_exp && int_digits.size() <= 18) {
    tok.is_integer = true;
    std::from_chars(int_digits.data(), int_digits.data() + int_digits.size(), tok.integer_value);
  }
  return tok;
}

inline std::int64_t parse_positive_integer(Cursor& c, const char* what) {
  const std::size_t at = c.pos();
  const std::string_view d = c.take_digits();
  if (d.empty()) throw parse_error(std::string("expected ") + what, at);
  std::int64_t v = 0;
  const auto res = std::from_chars(d.data(), d.data() + d.size(), v);
  if (res.ec != std::errc{}) throw parse_error(std::string(what) + " is too large", at);
  if (v == 0) throw parse_error(std::string(what) + " must be positive", at);
  return v;
}

// π or pi (word-bounded), then an optional inverse marker.
// Returns 0 if absent, +1 for π, -1 for π⁻¹.
inline int parse_pi(Cursor& c) {
  if (!c.consume(pi_utf8) && !c.consume_word("pi")) return 0;
  if (c.consume(superscript_minus_one) || c.consume("^-1")) return -1;
  return 1;
}

struct NumberToken {
  ExactScalar value;
  bool has_pi = false;
};

// The literal number grammar. `allow_slash` enables rationals and the
// trailing "/d" after π; expressions disable it because "/" is division there.
inline std::optional<NumberToken> parse_number_token(Cursor& c, bool allow_slash, bool allow_sign) {
  const std::size_t start = c.pos();
  bool negative = false;
  if (allow_sign && (c.peek() == '+' || c.peek() == '-')) {
    negative = c.peek() == '-';
    c.reset(c.pos() + 1);
  }
  ExactScalar coefficient(1);
  bool has_coefficient = false;
  if (auto dec = parse_unsigned_decimal(c)) {
    has_coefficient = true;
    coefficient = dec->value;
    if (allow_slash && dec->is_integer && c.peek() == '/' && is_digit(c.peek(1))) {
      c.reset(c.pos() + 1);
      const std::int64_t den = parse_positive_integer(c, "denominator");
      coefficient = ExactScalar::rational(dec->integer_value, den);
    }
  }
  const std::size_t before_pi = c.pos();
  c.skip_ws();
  bool separator = false;
  if (allow_slash && has_coefficient) {
    separator = c.consume(middle_dot) || c.consume("*");
    c.skip_ws();
  }
  const int pi_exp = parse_pi(c);
  if (pi_exp == 0) {
    if (separator) throw parse_error("expected π after multiplication sign", c.pos());
    c.reset(before_pi);
  }
  if (!has_coefficient && pi_exp == 0) {
    c.reset(start);
    return std::nullopt;
  }
  ExactScalar value = coefficient;
  if (pi_exp != 0) value = value * ExactScalar::rational(1, 1, pi_exp);
  if (pi_exp != 0 && allow_slash && c.peek() == '/' && is_digit(c.peek(1))) {
    c.reset(c.pos() + 1);
    value = value / ExactScalar(parse_positive_integer(c, "denominator"));
  }
  if (negative) value = -value;
  return NumberToken{value, pi_exp != 0};
}

struct UnitMatch {
  ReferenceAngle ref;
  std::size_t begin;
};

inline std::optional<ReferenceAngle> match_unit(Cursor& c) {
  static constexpr std::string_view words[] = {"arcmin", "arcsec", "rad", "deg", "gon", "turn"};
  static constexpr std::string_view signs[] = {"°", "′", "″"};
  for (auto s : signs)
    if (c.consume(s)) return find_reference(s);
  for (auto w : words)
    if (c.consume_word(w)) return find_reference(w);
  return std::nullopt;
}

inline void expect_end(Cursor& c) {
  c.skip_ws();
  if (!c.at_end()) throw parse_error("unexpected trailing input", c.pos());
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// DMS compound; returns nullopt (cursor untouched) if the input is not one.
inline std::optional<ExactScalar> parse_dms(Cursor& c) {
  const std::size_t start = c.pos();
  bool negative = false;
  if (c.peek() == '+' || c.peek() == '-') {
    negative = c.peek() == '-';
    c.reset(c.pos() + 1);
  }
  const std::string_view deg_digits = c.take_digits();
  if (deg_digits.empty() || c.peek() == '.' || c.peek() == '/') {
    c.reset(start);
    return std::nullopt;
  }
  c.skip_ws();
  bool ascii;
  if (c.starts_with("deg")) {
    c.reset(start);
    return std::nullopt;
  }
  if (c.consume(degree_sign)) {
    ascii = false;
  } else if (c.consume("d")) {
    ascii = true;
  } else {
    c.reset(start);
    return std::nullopt;
  }
  const std::size_t after_degrees = c.pos();
  c.skip_ws();
  if (!is_digit(c.peek())) {
    if (!ascii) {
      // "12°" alone is an ordinary number with a unit
      c.reset(start);
      return std::nullopt;
    }
    c.reset(after_degrees);
    if (c.identifier_char_at(c.pos())) {
      c.reset(start);
      return std::nullopt;
    }
  }
  std::int64_t degrees = 0;
  if (std::from_chars(deg_digits.data(), deg_digits.data() + deg_digits.size(), degrees).ec != std::errc{})
    throw parse_error("degrees out of range", start);
  ExactScalar total(degrees);
  if (is_digit(c.peek())) {
    const std::size_t min_at = c.pos();
    const std::string_view min_digits = c.take_digits();
    c.skip_ws();
    if (!(ascii ? c.consume("m") : c.consume(prime))) throw parse_error(ascii ? "expected 'm'" : "expected ′", c.pos());
    std::int64_t minutes = 60;
    std::from_chars(min_digits.data(), min_digits.data() + min_digits.size(), minutes);
    if (min_digits.size() > 2 || minutes >= 60) throw parse_error("minutes must be below 60", min_at);
    total = total + ExactScalar::rational(minutes, 60);
    const std::size_t after_minutes = c.pos();
    c.skip_ws();
    if (is_digit(c.peek()) || c.peek() == '.') {
      const std::size_t sec_at = c.pos();
      auto sec = parse_unsigned_decimal(c);
      if (!sec) throw parse_error("expected seconds", sec_at);
      c.skip_ws();
      if (!(ascii ? c.consume("s") : c.consume(double_prime)))
        throw parse_error(ascii ? "expected 's'" : "expected ″", c.pos());
      if (sec->value >= ExactScalar(60)) throw parse_error("seconds must be below 60", sec_at);
      total = total + sec->value * ExactScalar::rational(1, 3600);
    } else {
      c.reset(after_minutes);
    }
  }
  return negative ? -total : total;
}

}  // namespace textio_detail

/// A bare number (no unit), e.g. an angular measure or a period.
inline ExactScalar parse_number(std::string_view text) {
  using namespace textio_detail;
  Cursor c(text);
  c.skip_ws();
  auto n = parse_number_token(c, true, true);
  if (!n) throw parse_error("expected a number", c.pos());
  expect_end(c);
  return n->value;
}

/// Parses an angle literal. A number without a unit symbol is rejected with
/// missing_reference_angle_error; an unrecognized symbol with unknown_unit_error.
inline AngleLiteral parse_angle(std::string_view text) {
  using namespace textio_detail;
  Cursor c(text);
  c.skip_ws();
  if (auto dms = parse_dms(c)) {
    expect_end(c);
    return AngleLiteral{std::string(text), AngleValue{*dms, degree()}, AngleForm::dms};
  }
  auto n = parse_number_token(c, true, true);
  if (!n) throw parse_error("expected a number", c.pos());
  c.skip_ws();
  const std::size_t unit_at = c.pos();
  if (c.at_end()) throw missing_reference_angle_error("missing reference angle symbol", unit_at);
  auto ref = match_unit(c);
  if (!ref) {
    if (c.identifier_char_len(unit_at, true) != 0) {
      const auto word = c.take_identifier();
      throw unknown_unit_error("unknown unit '" + std::string(word) + "'", unit_at);
    }
    throw parse_error("expected a unit symbol", unit_at);
  }
  expect_end(c);
  return AngleLiteral{std::string(text), AngleValue{n->value, *ref},
                      n->has_pi ? AngleForm::symbolic_pi : AngleForm::decimal};
}

namespace textio_detail {

// Exact decimal expansion of n/d when d has no prime factors besides 2 and 5.
inline std::optional<std::string> terminating_decimal(std::int64_t n, std::int64_t d) {
  int twos = 0, fives = 0;
  std::int64_t rest = d;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return std::nullopt;
  const int places = std::max(twos, fives);
  if (places > 36) return std::nullopt;
  unsigned __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = n < 0;
  const unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-static_cast<__int128>(n))
                                         : static_cast<unsigned __int128>(n);
  // mag·scale/d stays below 2^127 for 64-bit n and places <= 36 only when d
  // cancels most of scale, which it does: scale/d is an integer.
  const unsigned __int128 factor = scale / static_cast<unsigned __int128>(d);
  if (factor != 0 && mag > (~static_cast<unsigned __int128>(0)) / factor) return std::nullopt;
  unsigned __int128 scaled = mag * factor;
  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  } while (scaled != 0);
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return negative ? "-" + out : out;
}

inline std::string decimal_text(const ExactScalar& v, int digits) {
  if (v.is_exact() && v.pi_exponent() == 0) {
    if (auto t = terminating_decimal(v.numerator(), v.denominator())) return *t;
    return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
  }
  return format_float(v.to_float(), digits);
}

inline std::string dms_text(const ExactScalar& v, int digits, bool ascii) {
  const int frac = std::clamp(digits, 0, 9);
  std::int64_t pow10 = 1;
  for (int i = 0; i < frac; ++i) pow10 *= 10;

  bool negative = v.sign() < 0;
  std::int64_t whole_seconds = 0;
  std::string seconds_fraction;
  const ExactScalar seconds = (negative ? -v : v) * ExactScalar(3600);
  std::optional<std::string> exact_fraction;
  if (seconds.is_exact() && seconds.pi_exponent() == 0) {
    const std::int64_t n = seconds.numerator(), d = seconds.denominator();
    whole_seconds = n / d;
    if (n % d == 0) {
      exact_fraction = "";
    } else if (auto t = terminating_decimal(n % d, d)) {
      exact_fraction = t->substr(t->find('.') + 1);
    } else {
      const __int128 scaled = (static_cast<__int128>(n) * pow10 * 2 + d) / (2 * static_cast<__int128>(d));
      whole_seconds = detail::narrow(scaled / pow10);
      const auto f = static_cast<std::int64_t>(scaled % pow10);
      if (frac > 0) {
        std::string s = std::to_string(f);
        exact_fraction = std::string(frac - s.size(), '0') + s;
      } else {
        exact_fraction = "";
      }
    }
  } else {
    const long double s = static_cast<long double>(seconds.to_float());
    const long double scaled = std::nearbyint(s * static_cast<long double>(pow10));
    if (!(scaled < 9.0e18L)) throw unsupported_form_error("value too large for DMS rendering");
    const auto r = static_cast<std::int64_t>(scaled);
    whole_seconds = r / pow10;
    if (frac > 0) {
      std::string f = std::to_string(r % pow10);
      exact_fraction = std::string(frac - f.size(), '0') + f;
    } else {
      exact_fraction = "";
    }
  }
  seconds_fraction = *exact_fraction;
  while (!seconds_fraction.empty() && seconds_fraction.back() == '0') seconds_fraction.pop_back();
  if (whole_seconds == 0 && seconds_fraction.empty()) negative = false;

  const std::int64_t deg = whole_seconds / 3600;
  const std::int64_t min = (whole_seconds % 3600) / 60;
  const std::int64_t sec = whole_seconds % 60;
  std::string out = negative ? "-" : "";
  out += std::to_string(deg) + (ascii ? "d" : "°");
  out += std::to_string(min) + (ascii ? "m" : "′");
  out += std::to_string(sec);
  if (!seconds_fraction.empty()) out += "." + seconds_fraction;
  out += ascii ? "s" : "″";
  return out;
}

}  // namespace textio_detail

/// Renders `v` so that parse_angle reads it back as an equal value (exactly
/// for exact values of the form's domain, to within float rounding otherwise).
///
/// decimal:     exact rationals as terminating decimals or n/d, others with
///              `digits` significant digits;
/// symbolic_pi: exact values as `nπ/d`, `n/d·π⁻¹`, `n/d`;
/// dms:         degree values only, seconds with up to min(digits, 9)
///              fractional digits unless exact.
inline std::string format_angle(const AngleValue& v, AngleForm form, int digits = 17, bool ascii = false) {
  using namespace textio_detail;
  const std::string& sym = v.ref.symbol(ascii);
  switch (form) {
    case AngleForm::decimal:
      return decimal_text(v.value, digits) + " " + sym;
    case AngleForm::symbolic_pi:
      if (!v.value.is_exact()) return format_float(v.value.to_float(), digits) + " " + sym;
      if (v.value.pi_exponent() == 0) return decimal_text(v.value, digits) + " " + sym;
      return to_string(v.value, ascii) + " " + sym;
    case AngleForm::dms:
      if (!(v.ref.full_circle() == degree().full_circle()))
        throw unsupported_form_error("DMS form requires the degree reference angle");
      return dms_text(v.value, digits, ascii);
  }
  return {};
}

/// Exact values in their natural form (π-multiples symbolically), Inexact
/// values as decimals.
inline std::string format_angle_auto(const AngleValue& v, int digits = 17, bool ascii = false) {
  return format_angle(v, AngleForm::symbolic_pi, digits, ascii);
}

// ---------------------------------------------------------------------------
// Expression language

enum class NodeKind { number, identifier, quantity, call, product, quotient, sum, equality };

struct ExpressionNode {
  NodeKind kind = NodeKind::number;
  ExactScalar number;              // number, quantity
  std::string text;                // identifier, unit symbol, function name, or "+"/"-" for sums
  std::vector<ExpressionNode> children;
  std::size_t begin = 0;           // byte offsets into the parsed text
  std::size_t end = 0;
  bool has_pi = false;             // number written with a π factor
};

inline constexpr std::string_view known_functions[] = {"sin", "cos", "tan", "arcsin", "arccos", "exp"};

namespace textio_detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : c_(text) {}

  ExpressionNode parse() {
    c_.skip_ws();
    if (c_.at_end()) throw parse_error("expected expression", c_.pos());
    ExpressionNode lhs = sum();
    c_.skip_ws();
    if (c_.peek() == '=') {
      c_.reset(c_.pos() + 1);
      ExpressionNode rhs = sum();
      lhs = binary(NodeKind::equality, "=", std::move(lhs), std::move(rhs));
      c_.skip_ws();
      if (c_.peek() == '=') throw parse_error("chained equality", c_.pos());
    }
    c_.skip_ws();
    if (!c_.at_end()) throw parse_error(c_.peek() == ')' ? "unbalanced ')'" : "expected operator", c_.pos());
    return lhs;
  }

 private:
  static constexpr int max_depth = 200;

  static ExpressionNode binary(NodeKind kind, std::string op, ExpressionNode a, ExpressionNode b) {
    ExpressionNode n;
    n.kind = kind;
    n.text = std::move(op);
    n.begin = a.begin;
    n.end = b.end;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
  }

  ExpressionNode sum() {
    ExpressionNode lhs = product();
    for (;;) {
      c_.skip_ws();
      const char op = c_.peek();
      if (op != '+' && op != '-') return lhs;
      c_.reset(c_.pos() + 1);
      lhs = binary(NodeKind::sum, std::string(1, op), std::move(lhs), product());
    }
  }

  ExpressionNode product() {
    ExpressionNode lhs = unary();
    for (;;) {
      c_.skip_ws();
      if (c_.consume("*") || c_.consume(middle_dot)) {
        lhs = binary(NodeKind::product, "*", std::move(lhs), unary());
      } else if (c_.peek() == '/') {
        c_.reset(c_.pos() + 1);
        lhs = binary(NodeKind::quotient, "/", std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  ExpressionNode unary() {
    c_.skip_ws();
    const std::size_t start = c_.pos();
    if (c_.peek() == '-' || c_.peek() == '+') {
      const bool negative = c_.peek() == '-';
      c_.reset(c_.pos() + 1);
      Depth guard(*this, start);
      ExpressionNode operand = unary();
      if (!negative) return operand;
      if (operand.kind == NodeKind::number || operand.kind == NodeKind::quantity) {
        operand.number = -operand.number;
        operand.begin = start;
        return operand;
      }
      ExpressionNode minus_one;
      minus_one.number = ExactScalar(-1);
      minus_one.begin = start;
      minus_one.end = start + 1;
      return binary(NodeKind::product, "*", std::move(minus_one), std::move(operand));
    }
    return primary();
  }

  ExpressionNode primary() {
    c_.skip_ws();
    const std::size_t start = c_.pos();
    if (c_.at_end()) throw parse_error("expected expression", start);
    if (c_.peek() == '(') {
      Depth guard(*this, start);
      c_.reset(c_.pos() + 1);
      ExpressionNode inner = sum();
      c_.skip_ws();
      if (c_.peek() != ')') throw parse_error("expected ')'", c_.pos());
      c_.reset(c_.pos() + 1);
      inner.begin = start;
      inner.end = c_.pos();
      return inner;
    }
    if (is_digit(c_.peek())) {
      if (auto dms = parse_dms(c_)) {
        ExpressionNode n;
        n.kind = NodeKind::quantity;
        n.number = *dms;
        n.text = std::string(degree().symbol());
        n.begin = start;
        n.end = c_.pos();
        return n;
      }
    }
    if (auto num = parse_number_token(c_, false, false)) {
      ExpressionNode n;
      n.number = num->value;
      n.has_pi = num->has_pi;
      n.begin = start;
      n.end = c_.pos();
      const std::size_t after_number = c_.pos();
      c_.skip_ws();
      const std::size_t unit_at = c_.pos();
      if (auto ref = match_unit(c_)) {
        n.kind = NodeKind::quantity;
        n.text = std::string(c_.text().substr(unit_at, c_.pos() - unit_at));
        n.end = c_.pos();
      } else {
        c_.reset(after_number);
      }
      return n;
    }
    if (c_.identifier_char_len(c_.pos(), true) != 0) {
      const std::string_view name = c_.take_identifier();
      const std::size_t after_name = c_.pos();
      c_.skip_ws();
      if (c_.peek() == '(') {
        if (std::find(std::begin(known_functions), std::end(known_functions), name) == std::end(known_functions))
          throw parse_error("unknown function '" + std::string(name) + "'", start);
        Depth guard(*this, start);
        c_.reset(c_.pos() + 1);
        ExpressionNode arg = sum();
        c_.skip_ws();
        if (c_.peek() != ')') throw parse_error("expected ')'", c_.pos());
        c_.reset(c_.pos() + 1);
        ExpressionNode call;
        call.kind = NodeKind::call;
        call.text = std::string(name);
        call.begin = start;
        call.end = c_.pos();
        call.children.push_back(std::move(arg));
        return call;
      }
      c_.reset(after_name);
      ExpressionNode id;
      id.kind = NodeKind::identifier;
      id.text = std::string(name);
      id.begin = start;
      id.end = after_name;
      return id;
    }
    throw parse_error("unexpected character", start);
  }

  struct Depth {
    Depth(ExpressionParser& p, std::size_t at) : p_(p) {
      if (++p_.depth_ > max_depth) throw parse_error("expression nested too deeply", at);
    }
    ~Depth() { --p_.depth_; }
    ExpressionParser& p_;
  };

  Cursor c_;
  int depth_ = 0;
};

}  // namespace textio_detail

/// Parses one expression: numbers, quantities (number + angle unit),
/// identifiers, `+ - * / ·`, parentheses, calls of sin, cos, tan, arcsin,
/// arccos and exp, and at most one top-level `=`.
inline ExpressionNode parse_expression(std::string_view text) {
  return textio_detail::ExpressionParser(text).parse();
}

}  // namespace anglekit
