#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "anglekit/angle.hpp"

using namespace anglekit;

namespace {

ExactScalar q(std::int64_t n, std::int64_t d = 1, int e = 0) { return ExactScalar::rational(n, d, e); }
AngleValue deg(ExactScalar v) { return {v, degree()}; }

Magnitude mag(ExactScalar phi) { return Magnitude::from_measure(Measure{phi}); }

}  // namespace

TEST(ReferenceAngle, BuiltinRegistry) {
  const auto refs = builtin_references();
  ASSERT_EQ(refs.size(), 6u);
  EXPECT_EQ(radian().full_circle(), q(2, 1, 1));
  EXPECT_EQ(degree().full_circle(), q(360));
  EXPECT_EQ(gon().full_circle(), q(400));
  EXPECT_EQ(turn().full_circle(), q(1));
  EXPECT_EQ(arcminute().full_circle(), q(21600));
  EXPECT_EQ(arcsecond().full_circle(), q(1296000));
  for (std::size_t i = 0; i < refs.size(); ++i)
    for (std::size_t j = i + 1; j < refs.size(); ++j) EXPECT_NE(refs[i].symbol(), refs[j].symbol());
  EXPECT_EQ(find_reference("deg")->name(), "degree");
  EXPECT_EQ(find_reference("″")->name(), "arcsecond");
  EXPECT_FALSE(find_reference("grad").has_value());
}

TEST(ReferenceAngle, CustomNeedsExactPositiveP) {
  EXPECT_NO_THROW(ReferenceAngle("hour angle", "h", 24));
  EXPECT_THROW(ReferenceAngle("bad", "b", 0), domain_error);
  EXPECT_THROW(ReferenceAngle("bad", "b", -3), domain_error);
  EXPECT_THROW(ReferenceAngle("bad", "b", ExactScalar::inexact(6.28)), domain_error);
  const auto custom = reference_for_period(24);
  EXPECT_EQ(custom.full_circle(), q(24));
  EXPECT_EQ(reference_for_period(400), gon());
}

TEST(Convert, Examples) {
  EXPECT_EQ(convert(deg(180), radian()), (AngleValue{ExactScalar::pi(), radian()}));
  const AngleValue x{q(7, 3), gon()};
  EXPECT_EQ(convert(x, gon()), x);
  EXPECT_EQ(convert(AngleValue{200, gon()}, degree()), deg(180));
  EXPECT_EQ(convert(AngleValue{1, radian()}, degree()).value, q(180, 1, -1));
}

TEST(MeasureOf, Examples) {
  EXPECT_EQ(measure_of(deg(360)).phi, q(2, 1, 1));
  EXPECT_EQ(measure_of(AngleValue{1, radian()}).phi, q(1));
  EXPECT_EQ(measure_of(deg(90)).phi, q(1, 2, 1));
}

TEST(ValueFromMeasure, Examples) {
  EXPECT_EQ(value_from_measure(Measure{ExactScalar::pi()}, degree()), deg(180));
  EXPECT_EQ(value_from_measure(Measure{1}, radian()), (AngleValue{1, radian()}));
  EXPECT_EQ(value_from_measure(Measure{q(1, 2, 1)}, gon()), (AngleValue{100, gon()}));
}

TEST(Magnitude, IntervalIsHalfOpenAtZero) {
  EXPECT_THROW(mag(0), domain_error);
  EXPECT_THROW(mag(q(-1, 2, 1)), domain_error);
  EXPECT_THROW(mag(q(5, 2, 1)), domain_error);
  EXPECT_NO_THROW(mag(q(2, 1, 1)));
  EXPECT_THROW(mag(7), domain_error);  // 7 > 2π
  EXPECT_NO_THROW(mag(6));
}

TEST(Magnitude, InStraightAngles) {
  EXPECT_EQ(magnitude_in_straight_angles(mag(ExactScalar::pi())), q(1));
  EXPECT_EQ(magnitude_in_straight_angles(mag(q(1, 2, 1))), q(1, 2));
  EXPECT_EQ(magnitude_in_straight_angles(mag(q(2, 1, 1))), q(2));
}

TEST(SemigroupAdd, Examples) {
  EXPECT_EQ(semigroup_add(mag(q(1, 3, 1)), mag(q(1, 6, 1))).phi(), q(1, 2, 1));
  EXPECT_EQ(semigroup_add(mag(q(2, 3, 1)), mag(q(2, 3, 1))).phi(), q(1, 3, 1));
  EXPECT_EQ(semigroup_add(mag(q(1, 2, 1)), mag(q(1, 2, 1))).phi(), ExactScalar::pi());
}

TEST(SemigroupAdd, RejectsReflexOperands) {
  EXPECT_THROW(semigroup_add(mag(q(3, 2, 1)), mag(q(1, 2, 1))), domain_error);
  EXPECT_THROW(semigroup_add(mag(q(1, 2, 1)), mag(q(2, 1, 1))), domain_error);
}

TEST(ReducePrincipal, Examples) {
  EXPECT_EQ(reduce_principal(deg(450)), deg(90));
  EXPECT_EQ(reduce_principal(deg(-90)), deg(270));
  EXPECT_EQ(reduce_principal(deg(90)), deg(90));
  EXPECT_EQ(reduce_principal(deg(360)), deg(0));
  EXPECT_EQ(reduce_principal(AngleValue{q(13, 2, 1), radian()}), (AngleValue{q(1, 2, 1), radian()}));
  // 7 rad - 2π has no exact representation
  const auto r = reduce_principal(AngleValue{7, radian()});
  EXPECT_FALSE(r.value.is_exact());
  EXPECT_NEAR(r.value.to_float(), 7 - 2 * M_PI, 1e-15);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(deg(90)), AngleClass::right);
  EXPECT_EQ(classify(AngleValue{100, gon()}), AngleClass::right);
  EXPECT_EQ(classify(deg(360)), AngleClass::perigon);
  EXPECT_EQ(classify(deg(0)), AngleClass::zero);
  EXPECT_EQ(classify(deg(45)), AngleClass::acute);
  EXPECT_EQ(classify(deg(135)), AngleClass::obtuse);
  EXPECT_EQ(classify(deg(180)), AngleClass::straight);
  EXPECT_EQ(classify(deg(270)), AngleClass::reflex);
  EXPECT_EQ(classify(AngleValue{q(1, 2, 1), radian()}), AngleClass::right);
  EXPECT_EQ(classify(AngleValue{3, radian()}), AngleClass::obtuse);  // 3 < π exactly
  EXPECT_EQ(classify(AngleValue{4, radian()}), AngleClass::reflex);
}

TEST(Classify, RejectsOutsideClosedPeriod) {
  EXPECT_THROW(classify(deg(-1)), domain_error);
  EXPECT_THROW(classify(deg(361)), domain_error);
  EXPECT_THROW(classify(AngleValue{7, radian()}), domain_error);
}

TEST(Classify, InexactUsesRelativeTolerance) {
  EXPECT_EQ(classify(deg(ExactScalar::inexact(90.0 + 1e-11))), AngleClass::right);
  EXPECT_EQ(classify(deg(ExactScalar::inexact(90.0 + 1e-6))), AngleClass::obtuse);
  EXPECT_EQ(classify(AngleValue{ExactScalar::inexact(M_PI), radian()}), AngleClass::straight);
  EXPECT_EQ(classify(deg(ExactScalar::inexact(-1e-10))), AngleClass::zero);
}

// ---------------------------------------------------------------------------
// Properties

namespace {

ExactScalar random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 10000);
  return q(num(rng), den(rng));
}

}  // namespace

TEST(AngleProperty, ConversionRoundTripAndMeasureInvariance) {
  std::mt19937_64 rng(11);
  for (const auto& a : builtin_references())
    for (const auto& b : builtin_references())
      for (int i = 0; i < 100; ++i) {
        const AngleValue v{random_rational(rng), a};
        const AngleValue there = convert(v, b);
        ASSERT_EQ(convert(there, a), v) << a.name() << " -> " << b.name();
        ASSERT_EQ(measure_of(there), measure_of(v));
        ASSERT_EQ(value_from_measure(measure_of(v), a), v);
      }
}

TEST(AngleProperty, CircleClosure) {
  std::mt19937_64 rng(5);
  const auto refs = builtin_references();
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 100);
    // split one turn into k rational pieces, then state each in a random reference
    std::vector<std::int64_t> weights(k);
    std::int64_t total = 0;
    for (auto& w : weights) total += (w = 1 + static_cast<std::int64_t>(rng() % 50));
    ExactScalar sum;
    for (auto w : weights) {
      const auto& ref = refs[rng() % refs.size()];
      const AngleValue part{ExactScalar::rational(w, total) * ref.full_circle(), ref};
      sum = sum + measure_of(part).phi;
    }
    ASSERT_EQ(sum, two_pi());
  }
}

TEST(AngleProperty, SemigroupLaws) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> den(1, 720);
  auto draw = [&] {
    const std::int64_t d = den(rng);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d));
    return mag(q(n, d, 1));
  };
  for (int i = 0; i < 2000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    ASSERT_EQ(semigroup_add(a, b), semigroup_add(b, a));
    ASSERT_EQ(semigroup_add(semigroup_add(a, b), c), semigroup_add(a, semigroup_add(b, c)));
    const auto r = semigroup_add(a, b);
    ASSERT_GT(r.phi().sign(), 0);
    ASSERT_LE(r.phi(), ExactScalar::pi());
    if (semigroup_add(a, b) == semigroup_add(a, c)) { ASSERT_EQ(b, c); }
  }
}

TEST(AngleProperty, ClassifyIsReferenceIndependent) {
  for (const auto& a : builtin_references())
    for (int eighth = 0; eighth <= 8; ++eighth) {
      const AngleValue v{ExactScalar::rational(eighth, 8) * a.full_circle(), a};
      const AngleClass c = classify(v);
      for (const auto& b : builtin_references()) ASSERT_EQ(classify(convert(v, b)), c);
    }
}
