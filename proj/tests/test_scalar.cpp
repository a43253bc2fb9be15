#include <gtest/gtest.h>

#include "generators.hpp"
#include "orthomat/matrix.hpp"
#include "orthomat/scalar.hpp"

using namespace orthomat;

TEST(Surd, NormalizesSquareFactors)
{
    const Surd s = Surd::sqrt(Rational(12));
    EXPECT_EQ(s.coef(), Rational(2));
    EXPECT_EQ(s.radicand(), Rational(3));
    EXPECT_EQ(s.str(), "2*sqrt(3)");
}

TEST(Surd, RationalRadicandIsCleared)
{
    // sqrt(1/2) = (1/2) sqrt(2)
    const Surd s = Surd::sqrt(Rational(1, 2));
    EXPECT_EQ(s.str(), "1/2*sqrt(2)");
    EXPECT_EQ(s.square(), Rational(1, 2));
}

TEST(Surd, ProductOfRootsIsRational)
{
    const Surd r2 = Surd::sqrt(Rational(2));
    EXPECT_TRUE((r2 * r2).is_rational());
    EXPECT_EQ((r2 * r2).to_rational(), Rational(2));
    EXPECT_EQ(Surd::sqrt(Rational(6)) / Surd::sqrt(Rational(3)), r2);
}

TEST(Surd, AdditionNeedsCommonRadicand)
{
    const Surd a(Rational(1, 3), Rational(5));
    const Surd b(Rational(2, 3), Rational(5));
    EXPECT_EQ(a + b, Surd::sqrt(Rational(5)));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_THROW(Surd::sqrt(Rational(2)) + Surd::sqrt(Rational(3)), IncommensurableSurds);
    // Zero joins any radicand.
    EXPECT_EQ(Surd(0) + a, a);
}

TEST(Surd, OrderingFollowsValue)
{
    EXPECT_LT(Surd::sqrt(Rational(2)), Surd(Rational(3, 2)));
    EXPECT_GT(Surd::sqrt(Rational(3)), Surd::sqrt(Rational(2)));
    EXPECT_LT(-Surd::sqrt(Rational(3)), Surd(-1));
}

TEST(Surd, ParseRoundTrip)
{
    for (const char* text : {"0", "-7/3", "sqrt(2)", "-sqrt(5)", "3/2*sqrt(5)", "-1/6*sqrt(105)"}) {
        EXPECT_EQ(Surd::parse(text).str(), text);
    }
    EXPECT_THROW(Surd::parse("2*sqrt(3"), std::invalid_argument);
}

TEST(Surd, PropertySquareOfRootIsInput)
{
    gen::Source src(11);
    for (int it = 0; it < 200; ++it) {
        const Rational r = src.positive_rational(200, 50);
        const Rational c = src.rational(-20, 20, 7);
        const Surd s = Surd(c) * Surd::sqrt(r);
        EXPECT_EQ(s.square(), c * c * r);
        EXPECT_NEAR(s.to_double(), c.get_d() * std::sqrt(r.get_d()), 1e-12 * (1 + std::abs(s.to_double())));
    }
}

TEST(ParseRational, AcceptsIntegersAndFractions)
{
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational(" -4/6 "), Rational(-2, 3));
    EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1e3"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(FormatValue, ShortestRoundTripDouble)
{
    EXPECT_EQ(format_value(0.1), "0.1");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_value(x)), x);
    EXPECT_EQ(format_value(parse_rational("6/4")), "3/2");
}

TEST(ApproxEqual, ExactTypesCompareExactly)
{
    EXPECT_TRUE(approx_equal(Rational(1, 3), parse_rational("2/6"), 0.0));
    EXPECT_FALSE(approx_equal(Rational(1, 3), Rational(Rational(1, 3) + Rational(1, 1000000000)), 1e-3));
    EXPECT_TRUE(approx_equal(1.0, 1.0 + 1e-14, 1e-12));
    EXPECT_FALSE(approx_equal(1.0, 1.001, 1e-12));
}

TEST(TriangularTable, RejectsWritesAboveDiagonal)
{
    TriangularTable<Rational> t(3, TableRole::Other);
    t.at(2, 1) = Rational(5);
    EXPECT_EQ(t(2, 1), Rational(5));
    EXPECT_EQ(t(1, 2), Rational(0));
    EXPECT_THROW(t.at(1, 2), std::out_of_range);
    EXPECT_THROW(t.at(4, 0), std::out_of_range);
    EXPECT_EQ(TriangularTable<Rational>::from_dense(t.dense(), TableRole::Other).dense(), t.dense());
}
