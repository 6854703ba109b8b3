#include "fockwc/angle.hpp"
#include "fockwc/errors.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace fockwc;

TEST(Rational, ReducesToLowestTermsWithPositiveDenominator) {
    const Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0, 7), Rational(0));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Arithmetic) {
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
    EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
    EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(Rational, FracIsInUnitInterval) {
    EXPECT_EQ(Rational(-1, 3).frac(), Rational(2, 3));
    EXPECT_EQ(Rational(7, 2).frac(), Rational(1, 2));
    EXPECT_EQ(Rational(-4).frac(), Rational(0));
}

TEST(Rational, OverflowIsDetected) {
    const Rational big(std::numeric_limits<std::int64_t>::max() / 2 + 1, 1);
    EXPECT_THROW(big + big, std::overflow_error);
    const Rational tiny(1, std::numeric_limits<std::int64_t>::max() / 2 + 1);
    EXPECT_THROW(tiny * tiny, std::overflow_error);
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-5"), Rational(-5));
    EXPECT_EQ(Rational(-5, 10).to_string(), "-1/2");
    EXPECT_THROW(Rational::parse("1/0"), ParseError);
    EXPECT_THROW(Rational::parse("x"), ParseError);
}

TEST(ExactAngle, RationalTurnsAreReduced) {
    const ExactAngle a = ExactAngle::rational(4, 3);
    EXPECT_TRUE(a.is_rational());
    EXPECT_EQ(a.rational_part(), Rational(1, 3));
    EXPECT_NEAR(static_cast<double>(a.radians()), 2.0 * M_PI / 3.0, 1e-15);
}

TEST(ExactAngle, ParseForms) {
    EXPECT_TRUE(ExactAngle::parse("1/3").equivalent(ExactAngle::rational(1, 3)));
    const ExactAngle g = ExactAngle::parse("golden");
    EXPECT_FALSE(g.is_rational());
    EXPECT_EQ(g.kappa(), Irrational::Golden);
    EXPECT_EQ(g.coefficient(), Rational(1));
    EXPECT_EQ(ExactAngle::parse("1/2*sqrt2").coefficient(), Rational(1, 2));
    EXPECT_EQ(ExactAngle::parse("sqrt3*2").coefficient(), Rational(2));
    EXPECT_THROW(ExactAngle::parse("pi"), ParseError);
    EXPECT_THROW(ExactAngle::parse(""), ParseError);
}

TEST(ExactAngle, GoldenTurnsValue) {
    const long double golden = (1.0L + std::sqrt(5.0L)) / 2.0L;
    EXPECT_NEAR(static_cast<double>(ExactAngle::parse("golden").turns()), static_cast<double>(golden - 1.0L), 1e-15);
}

TEST(ExactAngle, CanonicalizeRewritesGolden) {
    const CanonicalAngle c = canonicalize(ExactAngle::irrational(Rational(2), Irrational::Golden));
    EXPECT_EQ(c.base, Irrational::Sqrt5);
    EXPECT_EQ(c.coeff, Rational(1));
    EXPECT_EQ(c.offset.frac(), Rational(0));
}

TEST(ExactAngle, SumsWithMatchingBases) {
    const ExactAngle s = ExactAngle::parse("sqrt2").plus(ExactAngle::rational(1, 4));
    EXPECT_FALSE(s.is_rational());
    EXPECT_EQ(s.rational_part(), Rational(1, 4));
    const ExactAngle zero = ExactAngle::parse("sqrt2").plus(ExactAngle::parse("sqrt2").negated());
    EXPECT_TRUE(zero.is_rational());
    EXPECT_EQ(zero.rational_part(), Rational(0));
    EXPECT_THROW(ExactAngle::parse("sqrt2").plus(ExactAngle::parse("sqrt3")), UnsupportedCombination);
    // golden and sqrt5 share a base.
    EXPECT_NO_THROW(ExactAngle::parse("golden").plus(ExactAngle::parse("sqrt5")));
}

TEST(HalfIntegerCombination, Examples) {
    // lambda real at once.
    EXPECT_EQ(is_half_integer_combination(ExactAngle::rational(1, 2), ExactAngle::parse("golden")), 0);
    // 1/4 + m/4 hits 1/2 at m = 1.
    EXPECT_EQ(is_half_integer_combination(ExactAngle::rational(1, 4), ExactAngle::rational(1, 4)), 1);
    // 1/6 + m/2 never lands on {0, 1/2}.
    EXPECT_EQ(is_half_integer_combination(ExactAngle::rational(1, 6), ExactAngle::rational(1, 2)), std::nullopt);
    // Irrational rotation, rational start off the real axis: never.
    EXPECT_EQ(is_half_integer_combination(ExactAngle::rational(1, 4), ExactAngle::parse("golden")), std::nullopt);
    // -3 sqrt2 + m sqrt2 is rational at m = 3.
    EXPECT_EQ(is_half_integer_combination(ExactAngle::irrational(Rational(-3), Irrational::Sqrt2),
                                          ExactAngle::parse("sqrt2")),
              3);
    // Negative coefficient ratio: no m >= 0.
    EXPECT_EQ(is_half_integer_combination(ExactAngle::parse("sqrt2"), ExactAngle::parse("sqrt2")), std::nullopt);
}

namespace {

// Floating oracle: distance of 2(t + m s) from the nearest integer.
long double half_distance(const ExactAngle& t, const ExactAngle& s, std::int64_t m) {
    const long double x = 2.0L * (t.turns() + static_cast<long double>(m) * s.turns());
    return std::fabs(x - std::nearbyint(x));
}

} // namespace

TEST(HalfIntegerCombination, AgreesWithFloatingScan) {
    fockwc::testing::Gen gen(11);
    for (int trial = 0; trial < 400; ++trial) {
        const ExactAngle t = gen.angle();
        ExactAngle s = gen.angle();
        if (!t.is_rational() && !s.is_rational() && gen.coin())
            s = ExactAngle::irrational(Rational(gen.integer(1, 4), gen.integer(1, 4)), t.kappa());
        std::optional<std::int64_t> m;
        try {
            m = is_half_integer_combination(t, s);
        } catch (const UnsupportedCombination&) {
            continue;
        }
        const std::int64_t scan = m ? *m : 200;
        for (std::int64_t k = 0; k < scan; ++k)
            EXPECT_GT(half_distance(t, s, k), 1e-9L) << t.to_string() << " + " << k << " * " << s.to_string();
        if (m) {
            EXPECT_LT(half_distance(t, s, *m), 1e-9L) << t.to_string() << " + " << *m << " * " << s.to_string();
            const ExactAngle hit = t.plus(s.times(*m));
            ASSERT_TRUE(hit.is_rational());
            EXPECT_TRUE(hit.rational_part().is_half_integer());
        }
    }
}

TEST(ExactAngle, TimesAndNegatedMatchFloating) {
    fockwc::testing::Gen gen(12);
    for (int trial = 0; trial < 200; ++trial) {
        const ExactAngle a = gen.angle();
        const std::int64_t m = gen.integer(-20, 20);
        const long double expect = a.turns() * m;
        const long double got = a.times(m).turns();
        const long double diff = std::fabs(got - (expect - std::floor(expect)));
        EXPECT_LT(std::min(diff, 1.0L - diff), 1e-12L);
        EXPECT_TRUE(a.plus(a.negated()).equivalent(ExactAngle::rational(0, 1)));
    }
}
