#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "orthomat/polysys.hpp"
#include "orthomat/recurrence.hpp"

using namespace orthomat;

namespace {

const Family kFamilies[] = {Family::Gaussian, Family::Uniform, Family::Chebyshev1, Family::Semicircle,
                            Family::QuadraticWeight};

PolynomialSystem<Rational> exact_system(Family f, std::size_t n)
{
    return build_system(catalog_moments<Rational>(f, 2 * n + 1), n);
}

/// Random measure of order n through its recurrence coefficients.
MomentSequence<Rational> random_measure(gen::Source& src, std::size_t n, bool symmetric = false)
{
    return moments_from_recurrence(src.recurrence(2 * n + 2, symmetric), 2 * n + 2);
}

}  // namespace

TEST(BuildSystem, MonicRowsMatchGramSchmidt)
{
    for (auto f : kFamilies) {
        const auto sys = exact_system(f, 12);
        const auto gs = oracle::gram_schmidt(sys.moments.values(), 12);
        for (std::size_t k = 0; k <= 12; ++k) EXPECT_EQ(sys.eta.row(k), gs.monic[k]) << family_id(f) << " k=" << k;
    }
}

TEST(BuildSystem, RecurrenceMatchesGramSchmidt)
{
    for (auto f : kFamilies) {
        const auto sys = exact_system(f, 12);
        const auto gs = oracle::gram_schmidt(sys.moments.values(), 12);
        for (std::size_t k = 1; k <= 12; ++k) EXPECT_EQ(sys.rec.a2(k), gs.a2[k]) << family_id(f) << " k=" << k;
        for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(sys.rec.b(k), gs.b[k]) << family_id(f) << " k=" << k;
    }
}

TEST(BuildSystem, KnownRecurrenceCoefficients)
{
    const auto g = exact_system(Family::Gaussian, 12);
    const auto u = exact_system(Family::Uniform, 12);
    for (long n = 1; n <= 12; ++n) {
        EXPECT_EQ(g.rec.a2(n), Rational(n));
        Rational want(n * n, 4 * n * n - 1);
        want.canonicalize();
        EXPECT_EQ(u.rec.a2(n), want);
    }
    EXPECT_EQ(g.rec.a(2), Surd::sqrt(Rational(2)));
}

TEST(BuildSystem, OrthonormalThroughMomentFunctional)
{
    for (auto f : kFamilies) {
        const auto sys = exact_system(f, 12);
        for (std::size_t i = 0; i <= 12; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                Surd acc(0);
                for (std::size_t k = 0; k <= i; ++k)
                    for (std::size_t l = 0; l <= j; ++l) acc += sys.Pi(i, k) * sys.Pi(j, l) * Surd(sys.moments[k + l]);
                EXPECT_EQ(acc, Surd(i == j ? 1 : 0)) << family_id(f) << " (" << i << "," << j << ")";
            }
    }
}

TEST(BuildSystem, TablesAreMutuallyConsistent)
{
    const auto sys = exact_system(Family::QuadraticWeight, 8);
    EXPECT_EQ(sys.L, sys.Lambda);
    EXPECT_EQ(multiply(sys.eta, sys.tau).dense(), Matrix<Rational>::identity(9));
    for (std::size_t n = 0; n <= 8; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            EXPECT_EQ(Surd(sys.eta(n, i)), sys.Pi(n, i) / sys.Pi(n, n));
            EXPECT_EQ(Surd(sys.tau(n, i)), sys.Lambda(n, i) / sys.Lambda(i, i));
        }
}

TEST(BuildSystem, PropertyRecoversRandomRecurrence)
{
    gen::Source src(31);
    for (int it = 0; it < 25; ++it) {
        const std::size_t n = static_cast<std::size_t>(src.integer(1, 9));
        const auto rec = src.recurrence(2 * n + 1);
        const auto m = moments_from_recurrence(rec, 2 * n + 1);
        const auto sys = build_system(m, n);
        for (std::size_t k = 1; k <= n; ++k) EXPECT_EQ(sys.rec.a2(k), rec.a2(k)) << "iteration " << it;
        for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(sys.rec.b(k), rec.b(k)) << "iteration " << it;
    }
}

TEST(BuildSystem, DeterminantFormulasAgree)
{
    gen::Source src(32);
    for (int it = 0; it < 15; ++it) {
        const auto sys = build_system(random_measure(src, 7), 7);
        EXPECT_EQ(recurrence_from_determinants(sys), sys.rec) << "iteration " << it;
        EXPECT_EQ(recurrence_from_tables(sys), sys.rec) << "iteration " << it;
    }
}

TEST(BuildSystem, PropagatesNotPositiveDefinite)
{
    const MomentSequence<Rational> m({1, 0, 1, 0, 1, 0, 1}, "two-point");
    EXPECT_THROW(build_system(m, 3), NotPositiveDefinite);
    EXPECT_THROW(build_system(catalog_moments<Rational>(Family::Gaussian, 5), 3), PreconditionError);
}

TEST(Evaluation, ThreeRoutesAgree)
{
    gen::Source src(33);
    for (auto f : kFamilies) {
        const auto sys = exact_system(f, 10);
        const auto gs = oracle::gram_schmidt(sys.moments.values(), 10);
        for (int t = 0; t < 5; ++t) {
            const Rational x = src.rational(-3, 3, 5);
            for (std::size_t k = 0; k <= 10; ++k) {
                EXPECT_EQ(eval_poly(sys, k, x), eval_from_table(sys, k, x)) << family_id(f) << " k=" << k;
                EXPECT_EQ(eval_monic(sys, k, x), oracle::eval(gs.monic[k], x)) << family_id(f) << " k=" << k;
            }
        }
    }
}

TEST(Evaluation, AssociatedPolynomialsByTableAndRecurrence)
{
    gen::Source src(34);
    for (int it = 0; it < 8; ++it) {
        const auto sys = build_system(random_measure(src, 8), 8);
        const auto table = associated_polys(sys);
        const auto gs = oracle::gram_schmidt(sys.moments.values(), 8);
        for (int t = 0; t < 3; ++t) {
            const Rational x = src.rational(-4, 4, 3);
            for (std::size_t k = 0; k <= 8; ++k) {
                Surd by_table(0);
                Rational pow(1);
                for (std::size_t i = 0; i < k; ++i, pow *= x) by_table += table(k, i) * Surd(pow);
                EXPECT_EQ(by_table, eval_associated(sys, k, x)) << "k=" << k;
                // Oracle: L_y[(P_k(x) - P_k(y)) / (x - y)] scaled by pi(k,k).
                Rational monic(0);
                const auto& c = gs.monic[k];
                for (std::size_t j = 1; j < c.size(); ++j) {
                    Rational xi(1);
                    for (std::size_t i = 0; i < j; ++i, xi *= x) monic += c[j] * xi * sys.moments[j - 1 - i];
                }
                EXPECT_EQ(Surd(monic) * sys.Pi(k, k), by_table) << "k=" << k;
            }
        }
    }
}

TEST(Kernel, SumFormMatchesInverseMatrix)
{
    gen::Source src(35);
    for (auto f : kFamilies) {
        const auto sys = exact_system(f, 8);
        const auto gs = oracle::gram_schmidt(sys.moments.values(), 8);
        for (int t = 0; t < 5; ++t) {
            const Rational x = src.rational(-2, 2, 4);
            const Rational y = src.rational(-2, 2, 4);
            Rational want(0);
            for (std::size_t i = 0; i <= 8; ++i) want += oracle::eval(gs.monic[i], x) * oracle::eval(gs.monic[i], y) / gs.norms[i];
            EXPECT_EQ(kernel(sys, x, y), want) << family_id(f);
            EXPECT_EQ(kernel_via_inverse(sys, x, y), want) << family_id(f);
            EXPECT_EQ(christoffel(sys, x), Rational(1) / kernel(sys, x, x));
        }
    }
}

TEST(Kernel, InverseMomentMatrixMatchesGaussJordan)
{
    for (auto f : kFamilies) {
        const auto sys = exact_system(f, 7);
        EXPECT_EQ(inverse_moment_matrix(sys), oracle::gauss_jordan_inverse(sys.hankel.entries)) << family_id(f);
    }
}

TEST(Diagnostics, ExactIdentitiesHold)
{
    for (auto f : kFamilies) {
        for (std::size_t n = 1; n <= 10; ++n) {
            const auto d = diagnostics(exact_system(f, n));
            EXPECT_TRUE(d.eigenvalues.empty());
            for (const auto& l : d.lines) EXPECT_TRUE(l.pass) << family_id(f) << " n=" << n << ": " << l.name;
        }
    }
}

TEST(Diagnostics, FloatTraceAndKernelBounds)
{
    gen::Source src(36);
    std::vector<double> points;
    for (int i = 0; i < 20; ++i) points.push_back(src.real(-1.5, 1.5));
    for (auto f : kFamilies) {
        for (std::size_t n = 1; n <= 10; ++n) {
            const auto sys = build_system(catalog_moments<double>(f, 2 * n + 1), n);
            const auto d = diagnostics(sys, points);
            ASSERT_EQ(d.eigenvalues.size(), n + 1);
            EXPECT_TRUE(d.ok()) << family_id(f) << " n=" << n;
            for (const auto& l : d.lines) {
                if (!l.informative) {
                    EXPECT_TRUE(l.pass) << family_id(f) << " n=" << n << ": " << l.name << " " << l.lhs << " vs " << l.rhs;
                }
            }
        }
    }
}
