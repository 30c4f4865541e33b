// One line per acceptance criterion: "PASS <n> <title>" or "FAIL <n> <title>: <detail>".
// Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anglekit/anglekit.hpp"
#include "cli.hpp"

using namespace anglekit;

namespace {

ExactScalar q(std::int64_t n, std::int64_t d = 1, int e = 0) { return ExactScalar::rational(n, d, e); }

struct Failure {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out, err;
  std::istringstream in;
  const int code = cli::run(std::move(args), out, err, in);
  require(code == 0, "exit " + std::to_string(code) + ": " + err.str());
  return out.str();
}

std::int64_t ulps(double a, double b) {
  std::int64_t ia, ib;
  std::memcpy(&ia, &a, sizeof a);
  std::memcpy(&ib, &b, sizeof b);
  return std::llabs(ia - ib);
}

void semicircle() {
  require(cli_out({"convert", "180°", "rad"}) == "π rad\n", "convert");
  require(cli_out({"measure", "180°"}) == "π\n", "measure");
  const std::string arc = cli_out({"arc", "180°", "1"});
  require(ulps(std::stod(arc), M_PI) <= 1, "arc printed " + arc);
  require(ulps(arc_length(ArcSpec(1, measure_of({180, degree()}))), M_PI) <= 1, "arc_length");
}

void radian_definition() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> r_dist(1e-6, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double r = r_dist(rng);
    require(arc_length(ArcSpec(r, Measure{1})) == r, "r = " + format_float(r, 17));
  }
}

void conversion_exactness() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000), den(1, 100000);
  for (const auto& a : builtin_references())
    for (const auto& b : builtin_references())
      for (int i = 0; i < 100; ++i) {
        const AngleValue v{q(num(rng), den(rng)), a};
        require(convert(convert(v, b), a) == v, a.name() + " -> " + b.name() + " " + to_string(v.value));
      }
}

void circle_closure() {
  std::mt19937_64 rng(3);
  const auto refs = builtin_references();
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 100);
    std::vector<std::int64_t> w(k);
    std::int64_t total = 0;
    for (auto& x : w) total += (x = 1 + static_cast<std::int64_t>(rng() % 1000));
    ExactScalar sum;
    for (auto x : w) {
      const auto& ref = refs[rng() % refs.size()];
      sum = sum + measure_of({ExactScalar::rational(x, total) * ref.full_circle(), ref}).phi;
    }
    require(sum == two_pi(), "trial " + std::to_string(trial) + " sums to " + to_string(sum));
  }
}

void chord_integral_oracle() {
  const int n = 10000;
  const double hi = 1 - 1e-9;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const double x = hi * i / (n - 1);
    worst = std::max(worst, std::abs(chord_integral_F(x) - std::asin(x)));
  }
  require(worst <= 1e-9, "max |F - arcsin| = " + format_float(worst, 3));
  require(std::abs(chord_integral_F(1) - M_PI / 2) <= 1e-9, "F(1)");
}

void pythagorean_identity() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> x_dist(-1e6, 1e6);
  for (const ExactScalar& p : {q(1), two_pi(), q(360), q(400)})
    for (int i = 0; i < 10000; ++i) {
      const double x = x_dist(rng);
      const double res = pythagorean_residual(p, x);
      require(std::abs(res) <= 1e-12, "p = " + to_string(p) + " x = " + format_float(x, 17));
    }
}

void semigroup_laws() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> den(1, 100000);
  auto draw = [&] {
    const std::int64_t d = den(rng);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d));
    return Magnitude::from_measure(Measure{q(n, d, 1)});
  };
  for (int i = 0; i < 10000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    require(semigroup_add(a, b) == semigroup_add(b, a), "commutativity");
    require(semigroup_add(semigroup_add(a, b), c) == semigroup_add(a, semigroup_add(b, c)), "associativity");
    require((semigroup_add(a, b) == semigroup_add(a, c)) == (b == c), "cancellation");
  }
}

void table1_classification() {
  const AngleClass expected[] = {AngleClass::zero,   AngleClass::acute,    AngleClass::right,  AngleClass::obtuse,
                                 AngleClass::straight, AngleClass::reflex, AngleClass::perigon};
  const ExactScalar fractions[] = {q(0), q(1, 8), q(1, 4), q(3, 8), q(1, 2), q(3, 4), q(1)};
  for (const auto& a : builtin_references())
    for (std::size_t i = 0; i < 7; ++i) {
      const AngleValue v{fractions[i] * a.full_circle(), a};
      require(classify(v) == expected[i], a.name() + " " + to_string(fractions[i]) + "p");
      for (const auto& b : builtin_references())
        require(classify(convert(v, b)) == expected[i], "convert to " + b.name());
    }
}

struct LintCase {
  const char* text;
  std::vector<LintRule> expected;
};

void lint_corpus() {
  using R = LintRule;
  const std::vector<LintCase> corpus = {
      // RAD-IN-TRIG-ARG
      {"x = sin(0.5 rad)", {R::rad_in_trig_arg}},
      {"y = cos(30°)", {R::rad_in_trig_arg}},
      {"z = tan(50 gon) + 1", {R::rad_in_trig_arg}},
      {"w = 2 * sin(π rad)", {R::rad_in_trig_arg}},
      {"v = cos(0.25 turn * 2)", {R::rad_in_trig_arg}},
      {"x = sin(0.5)", {}},
      {"y = cos(π/6)", {}},
      {"z = tan(x) * 3 rad", {}},
      {"w = arcsin(0.5)", {}},
      {"v = sin(a + b)", {}},
      // MISSING-REFERENCE-SYMBOL
      {"angle a = pi", {R::missing_reference_symbol}},
      {"angle b = 90", {R::missing_reference_symbol}},
      {"angle c = 2π/3", {R::missing_reference_symbol}},
      {"angle d\nd = 0.5", {R::missing_reference_symbol}},
      {"angle e = π/4 + 1", {R::missing_reference_symbol}},
      {"angle a = π rad", {}},
      {"angle b = 90°", {}},
      {"angle c = 2π/3 rad", {}},
      {"angle d = 12°34′56.7″", {}},
      {"x = 90", {}},
      // MAGNITUDE-AS-QUOTIENT
      {"length s\nlength r\nangle a = s / r", {R::magnitude_as_quotient}},
      {"length s, r\nangle α\nα = s/r", {R::magnitude_as_quotient}},
      {"length arc, radius\nangle θ = arc / radius", {R::magnitude_as_quotient}},
      {"length s, r\nangle φ\ns / r = φ", {R::magnitude_as_quotient}},
      {"length l, r\nangle β = l/r", {R::magnitude_as_quotient}},
      {"length s, r\nangle φ\ns = φ * r", {}},
      {"length s\nangle a = s / 2", {}},
      {"length s, r\nk = s / r", {}},
      {"angle a = s / r", {}},
      {"length s, r\nangle φ = 1 rad\ns = φ · r", {}},
  };
  int per_rule[3] = {0, 0, 0};
  int negatives = 0;
  for (const auto& c : corpus) {
    std::vector<R> got;
    for (const auto& f : lint(c.text)) {
      require(f.rule.has_value(), std::string("syntax finding on '") + c.text + "': " + f.message);
      got.push_back(*f.rule);
    }
    require(got == c.expected, std::string("wrong findings for '") + c.text + "'");
    if (c.expected.empty()) ++negatives;
    else ++per_rule[static_cast<int>(c.expected[0])];
  }
  require(corpus.size() == 30 && negatives == 15 && per_rule[0] == 5 && per_rule[1] == 5 && per_rule[2] == 5,
          "corpus shape");
}

void parser_fuzz() {
  std::mt19937_64 rng(10);
  const std::string alphabet = "0123456789./*+-=()^, eEpiradgontusc\t°′″π·⁻¹αφ";
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    const std::size_t len = rng() % 32;
    for (std::size_t k = 0; k < len; ++k)
      s += (rng() % 3 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
    for (int which = 0; which < 2; ++which) {
      try {
        if (which == 0) parse_angle(s);
        else parse_expression(s);
      } catch (const parse_error& e) {
        require(e.position() <= s.size(), "position past end");
      } catch (const arithmetic_overflow&) {
      }
    }
  }
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
  const std::int64_t dens[] = {1, 2, 3, 4, 6, 7, 8, 9, 12, 60, 180, 360, 3600};
  const auto refs = builtin_references();
  for (int i = 0; i < 1000; ++i) {
    const AngleValue v{q(num(rng), dens[rng() % std::size(dens)], static_cast<int>(rng() % 3) - 1),
                       refs[rng() % refs.size()]};
    const bool ascii = rng() % 2;
    const std::string text = format_angle(v, AngleForm::symbolic_pi, 17, ascii);
    require(parse_angle(text).parsed == v, "round trip of '" + text + "'");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<void()> check;
    double limit_s;
  };
  const Criterion criteria[] = {
      {"semicircle anchor", semicircle, 1},
      {"radian definition", radian_definition, 0},
      {"conversion exactness", conversion_exactness, 5},
      {"circle closure", circle_closure, 0},
      {"chord integral oracle", chord_integral_oracle, 30},
      {"pythagorean identity", pythagorean_identity, 0},
      {"semigroup laws", semigroup_laws, 0},
      {"table 1 classification", table1_classification, 0},
      {"lint corpus", lint_corpus, 0},
      {"parser fuzz and round trip", parser_fuzz, 0},
  };
  int failures = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.check();
    } catch (const Failure& f) {
      detail = f.detail;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && c.limit_s > 0 && secs > c.limit_s)
      detail = "took " + format_float(secs, 3) + " s, limit " + format_float(c.limit_s, 3) + " s";
    if (detail.empty()) {
      std::cout << "PASS " << n << ' ' << c.title << " (" << format_float(secs, 3) << " s)\n";
    } else {
      ++failures;
      std::cout << "FAIL " << n << ' ' << c.title << ": " << detail << '\n';
    }
  }
  std::cout << (10 - failures) << "/10 criteria passed\n";
  return failures;
}
