#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "orthomat/connect.hpp"
#include "orthomat/recurrence.hpp"

using namespace orthomat;

namespace {

PolynomialSystem<Rational> exact_system(Family f, std::size_t n)
{
    return build_system(catalog_moments<Rational>(f, 2 * n + 1), n);
}

PolynomialSystem<Rational> random_system(gen::Source& src, std::size_t n, bool symmetric = false)
{
    return build_system(moments_from_recurrence(src.recurrence(2 * n + 2, symmetric), 2 * n + 1), n);
}

template <class T>
bool is_identity(const TriangularTable<T>& t)
{
    for (std::size_t i = 0; i <= t.order(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!(t(i, j) == T(i == j ? 1 : 0))) return false;
    return true;
}

}  // namespace

TEST(Connection, SameMeasureGivesIdentity)
{
    for (auto f : {Family::Gaussian, Family::Uniform, Family::Semicircle}) {
        const auto sys = exact_system(f, 10);
        EXPECT_TRUE(is_identity(connection_table(sys, sys, 10).gamma)) << family_id(f);
        EXPECT_TRUE(is_identity(monic_connection_table(sys, sys, 10).gamma)) << family_id(f);
    }
}

TEST(Connection, PropertyInverseAndTransitivity)
{
    gen::Source src(51);
    for (int it = 0; it < 12; ++it) {
        const std::size_t n = static_cast<std::size_t>(src.integer(1, 10));
        const auto alpha = random_system(src, n);
        const auto delta = random_system(src, n);
        const auto eps = random_system(src, n);
        const auto da = connection_table(delta, alpha, n).gamma;
        const auto ad = connection_table(alpha, delta, n).gamma;
        EXPECT_TRUE(is_identity(multiply(da, ad))) << "iteration " << it;
        EXPECT_TRUE(is_identity(multiply(ad, da))) << "iteration " << it;
        const auto ea = connection_table(eps, alpha, n).gamma;
        const auto ed = connection_table(eps, delta, n).gamma;
        EXPECT_EQ(multiply(ed, da), ea) << "iteration " << it;

        const auto mda = monic_connection_table(delta, alpha, n).gamma;
        const auto mad = monic_connection_table(alpha, delta, n).gamma;
        EXPECT_TRUE(is_identity(multiply(mda, mad))) << "iteration " << it;
        EXPECT_EQ(multiply(monic_connection_table(eps, delta, n).gamma, mda),
                  monic_connection_table(eps, alpha, n).gamma);
    }
}

TEST(Connection, MonicMatchesBruteForceBasisChange)
{
    gen::Source src(52);
    for (int it = 0; it < 8; ++it) {
        const std::size_t n = 8;
        const auto alpha = random_system(src, n);
        const auto delta = random_system(src, n);
        const auto gs_alpha = oracle::gram_schmidt(alpha.moments.values(), n);
        const auto gs_delta = oracle::gram_schmidt(delta.moments.values(), n);
        const auto table = monic_connection_table(delta, alpha, n).gamma;
        for (std::size_t k = 0; k <= n; ++k) {
            auto coords = oracle::expand_in_basis(gs_delta.monic[k], gs_alpha.monic);
            coords.resize(k + 1, Rational(0));
            EXPECT_EQ(table.row(k), coords) << "iteration " << it << " k=" << k;
        }
    }
}

TEST(Connection, OrthonormalIsScaledMonic)
{
    const auto alpha = exact_system(Family::Uniform, 8);
    const auto delta = exact_system(Family::QuadraticWeight, 8);
    const auto on = connection_table(delta, alpha, 8).gamma;
    const auto mo = monic_connection_table(delta, alpha, 8).gamma;
    for (std::size_t n = 0; n <= 8; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            EXPECT_EQ(on(n, k), delta.Pi(n, n) * Surd(mo(n, k)) * alpha.Lambda(k, k));
        }
}

TEST(Connection, OrderMismatchIsPrecondition)
{
    const auto a = exact_system(Family::Uniform, 4);
    const auto b = exact_system(Family::Gaussian, 6);
    EXPECT_THROW(connection_table(b, a, 5), PreconditionError);
    EXPECT_NO_THROW(connection_table(b, a, 4));
}

TEST(ClosedFormGamma, PropertyTopDiagonalsMatchTables)
{
    gen::Source src(53);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = static_cast<std::size_t>(src.integer(2, 12));
        const auto alpha = random_system(src, n);
        const auto delta = random_system(src, n);
        const auto table = monic_connection_table(delta, alpha, n).gamma;
        for (std::size_t r = 0; r <= n; ++r) {
            EXPECT_EQ(closed_form_gamma(delta.rec, alpha.rec, r, r), Rational(1));
            if (r >= 1) {
                EXPECT_EQ(closed_form_gamma(delta.rec, alpha.rec, r, r - 1), table(r, r - 1)) << "r=" << r;
            }
            if (r >= 2) {
                EXPECT_EQ(closed_form_gamma(delta.rec, alpha.rec, r, r - 2), table(r, r - 2)) << "r=" << r;
            }
        }
    }
}

TEST(ClosedFormGamma, SymmetricPairs)
{
    gen::Source src(54);
    for (int it = 0; it < 15; ++it) {
        const std::size_t n = static_cast<std::size_t>(src.integer(2, 12));
        const auto alpha = random_system(src, n, true);
        const auto delta = random_system(src, n, true);
        const auto table = monic_connection_table(delta, alpha, n).gamma;
        for (std::size_t r = 2; r <= n; ++r) {
            Rational want(0);
            for (std::size_t j = 1; j < r; ++j) want += alpha.rec.a2(j) - delta.rec.a2(j);
            EXPECT_EQ(table(r, r - 2), want);
            EXPECT_EQ(table(r, r - 1), Rational(0));
            EXPECT_EQ(closed_form_gamma(delta.rec, alpha.rec, r, r - 2), want);
        }
    }
}

TEST(ClosedFormGamma, OtherOffsetsThrow)
{
    const auto s = exact_system(Family::Uniform, 6);
    EXPECT_THROW(closed_form_gamma(s.rec, s.rec, 5, 2), PreconditionError);
    EXPECT_THROW(closed_form_gamma(s.rec, s.rec, 2, 3), PreconditionError);
}

TEST(Ribbon, BuiltinPairIsTwoRibbon)
{
    const auto pair = builtin_ribbon_pair<Rational>(8);
    const auto alpha = build_system(pair.alpha, 8);
    const auto rep = ribbon_check(alpha, pair.delta, pair.r, 8);
    EXPECT_TRUE(rep.ribbon);
    EXPECT_EQ(rep.max_off_ribbon, 0.0);
    for (std::size_t i = 0; i <= 8; ++i)
        for (std::size_t j = 0; j <= 8; ++j)
            if (i > j + 2 || j > i + 2) {
                EXPECT_TRUE(rep.matrix(i, j).is_zero());
            }
}

TEST(Ribbon, NegativeControlAtWidthOne)
{
    const auto pair = builtin_ribbon_pair<Rational>(8);
    const auto alpha = build_system(pair.alpha, 8);
    const auto rep = ribbon_check(alpha, pair.delta, 1, 8);
    EXPECT_FALSE(rep.ribbon);
    EXPECT_GT(rep.max_off_ribbon, 0.1);
    EXPECT_EQ(rep.worst_row, rep.worst_col + 2);
}

TEST(Ribbon, FloatModeUsesRelativeTolerance)
{
    const auto pair = builtin_ribbon_pair<double>(8);
    const auto alpha = build_system(pair.alpha, 8);
    EXPECT_TRUE(ribbon_check(alpha, pair.delta, 2, 8, 1e-9).ribbon);
    EXPECT_FALSE(ribbon_check(alpha, pair.delta, 1, 8, 1e-9).ribbon);
}

TEST(RadonNikodym, OmegaIsFirstConnectionColumn)
{
    gen::Source src(55);
    for (int it = 0; it < 6; ++it) {
        const auto alpha_m = moments_from_recurrence(src.recurrence(30), 25);
        const auto alpha = build_system(alpha_m, 12);
        const auto delta = random_system(src, 12);
        const auto rn = rn_expansion(alpha_m, delta, 12);
        const auto gamma = connection_table(delta, alpha, 12).gamma;
        for (std::size_t j = 0; j <= 12; ++j) EXPECT_EQ(rn.omega[j], gamma(j, 0)) << "j=" << j;
    }
}

TEST(RadonNikodym, SemicircleOverUniform)
{
    const auto alpha = catalog_moments<Rational>(Family::Semicircle, 21);
    const auto delta = build_system(catalog_moments<Rational>(Family::Uniform, 21), 10);
    const auto rn = rn_expansion(alpha, delta, 10);
    EXPECT_EQ(rn.omega[0], Surd(1));
    EXPECT_EQ(rn.omega[1], Surd(0));
    for (std::size_t j = 1; j < rn.parseval.size(); ++j) EXPECT_GE(rn.parseval[j], rn.parseval[j - 1]);
}

TEST(RadonNikodym, ParsevalApproachesIntegral)
{
    // d alpha / d delta = (4/pi) sqrt(1-x^2) for semicircle over uniform.
    const double pi = boost::math::constants::pi<double>();
    const double integral =
        oracle::simpson([&](double x) { return 16.0 / (pi * pi) * (1.0 - x * x) * 0.5; }, -1.0, 1.0, 2000);
    EXPECT_NEAR(integral, 32.0 / (3.0 * pi * pi), 1e-12);

    const auto alpha = catalog_moments<Wide>(Family::Semicircle, 81);
    const auto delta = build_system(catalog_moments<Wide>(Family::Uniform, 81), 40);
    const auto rn = rn_expansion(alpha, delta, 40, integral);
    ASSERT_TRUE(rn.bessel_residual.has_value());
    EXPECT_GE(*rn.bessel_residual, -1e-12);
    EXPECT_LT(*rn.bessel_residual, 1e-6);
    for (std::size_t j = 1; j < rn.parseval.size(); ++j) EXPECT_GE(rn.parseval[j], rn.parseval[j - 1]);
}

TEST(RadonNikodym, NeedsEnoughData)
{
    const auto alpha = catalog_moments<Rational>(Family::Semicircle, 5);
    const auto delta = build_system(catalog_moments<Rational>(Family::Uniform, 21), 10);
    EXPECT_THROW(rn_expansion(alpha, delta, 6), PreconditionError);
    const auto alpha_long = catalog_moments<Rational>(Family::Semicircle, 30);
    EXPECT_THROW(rn_expansion(alpha_long, delta, 12), PreconditionError);
}
