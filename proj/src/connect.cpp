#include "orthomat/connect.hpp"

#include <cmath>

namespace orthomat {

std::string to_string(Basis b)
{
    return b == Basis::Monic ? "monic" : "orthonormal";
}

Basis parse_basis(const std::string& s)
{
    if (s == "orthonormal") return Basis::Orthonormal;
    if (s == "monic") return Basis::Monic;
    throw InputError("unknown basis '" + s + "' (expected orthonormal or monic)");
}

namespace {

template <class K>
void require_orders(const PolynomialSystem<K>& target, const PolynomialSystem<K>& source, std::size_t n)
{
    if (n > target.order || n > source.order) {
        throw PreconditionError("connection_table: order " + std::to_string(n) + " exceeds system orders (" +
                                std::to_string(target.order) + ", " + std::to_string(source.order) + ")");
    }
}

}  // namespace

template <class K>
ConnectionTable<Root<K>> connection_table(const PolynomialSystem<K>& target, const PolynomialSystem<K>& source,
                                          std::size_t n)
{
    require_orders(target, source, n);
    ConnectionTable<Root<K>> t;
    t.order = n;
    t.basis = Basis::Orthonormal;
    t.target_label = target.moments.label();
    t.source_label = source.moments.label();
    t.gamma = multiply(target.Pi.leading(n), source.Lambda.leading(n), TableRole::Other);
    return t;
}

template <class K>
ConnectionTable<K> monic_connection_table(const PolynomialSystem<K>& target, const PolynomialSystem<K>& source,
                                          std::size_t n)
{
    require_orders(target, source, n);
    ConnectionTable<K> t;
    t.order = n;
    t.basis = Basis::Monic;
    t.target_label = target.moments.label();
    t.source_label = source.moments.label();
    t.gamma = multiply(target.eta.leading(n), source.tau.leading(n), TableRole::Other);
    return t;
}

template <class K>
K closed_form_gamma(const RecurrenceCoefficients<K>& target, const RecurrenceCoefficients<K>& source,
                    std::size_t n, std::size_t k)
{
    if (k > n) throw PreconditionError("closed_form_gamma: k > n");
    if (k == n) return K(1);
    if (k + 1 == n) {
        K s(0);
        for (std::size_t j = 0; j < n; ++j) s += source.b(j) - target.b(j);
        return s;
    }
    if (k + 2 == n) {
        K a_part(0);
        for (std::size_t j = 1; j + 1 <= n; ++j) a_part += source.a2(j) - target.a2(j);
        K diff(0);
        K sq_diff(0);
        for (std::size_t j = 0; j + 2 <= n; ++j) {
            diff += source.b(j) - target.b(j);
            sq_diff += source.b(j) * source.b(j) - target.b(j) * target.b(j);
        }
        return a_part + diff * diff / 2 + sq_diff / 2 - target.b(n - 1) * diff;
    }
    throw PreconditionError("closed_form_gamma: only k in {n, n-1, n-2} has a closed form (n = " +
                            std::to_string(n) + ", k = " + std::to_string(k) + ")");
}

template <class K>
RibbonReport<K> ribbon_check(const PolynomialSystem<K>& alpha, const MomentSequence<K>& delta, std::size_t r,
                             std::size_t n, double tol)
{
    using R = Root<K>;
    if (n > alpha.order) {
        throw PreconditionError("ribbon_check: order " + std::to_string(n) + " exceeds alpha system order " +
                                std::to_string(alpha.order));
    }
    const HankelMoments<K> md = hankel_matrix(delta, n);
    RibbonReport<K> rep;
    rep.matrix = Matrix<R>(n + 1, n + 1);
    // Pi(alpha) M(delta) first, row by row, then times Pi(alpha)^T.
    Matrix<R> left(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t l = 0; l <= n; ++l) {
            R acc(0);
            for (std::size_t k = 0; k <= i; ++k) acc += alpha.Pi(i, k) * R(md.entries(k, l));
            left(i, l) = acc;
        }
    double max_all = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            R acc(0);
            for (std::size_t l = 0; l <= j; ++l) acc += left(i, l) * alpha.Pi(j, l);
            rep.matrix(i, j) = acc;
            rep.matrix(j, i) = acc;
            max_all = std::max(max_all, std::abs(to_double(acc)));
        }
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j + r < i; ++j) {
            const R& v = rep.matrix(i, j);
            const double mag = std::abs(to_double(v));
            bool zero = false;
            if constexpr (is_exact_v<K>) {
                zero = v == R(0);
            } else {
                zero = mag <= tol * max_all;
            }
            if (mag > rep.max_off_ribbon) {
                rep.max_off_ribbon = mag;
                rep.worst_row = i;
                rep.worst_col = j;
            }
            if (!zero) rep.ribbon = false;
        }
    return rep;
}

template <class K>
RibbonPair<K> builtin_ribbon_pair(std::size_t n)
{
    return RibbonPair<K>{catalog_moments<K>(Family::Uniform, 2 * n + 1),
                         catalog_moments<K>(Family::QuadraticWeight, 2 * n + 1), 2};
}

template <class K>
RNExpansion<K> rn_expansion(const MomentSequence<K>& alpha, const PolynomialSystem<K>& delta, std::size_t N,
                            std::optional<double> integral)
{
    using R = Root<K>;
    using F = FieldTraits<K>;
    if (N > alpha.max_index()) {
        throw PreconditionError("rn_expansion: needs alpha moments m_0..m_" + std::to_string(N) + ", have m_0..m_" +
                                std::to_string(alpha.max_index()));
    }
    if (N > delta.order) {
        throw PreconditionError("rn_expansion: delta system order " + std::to_string(delta.order) +
                                " is below " + std::to_string(N));
    }
    RNExpansion<K> out;
    K running(0);
    for (std::size_t j = 0; j <= N; ++j) {
        R w(0);
        for (std::size_t k = 0; k <= j; ++k) w += delta.Pi(j, k) * R(alpha[k]);
        const K sq = F::root_square(w);
        running += sq;
        out.omega.push_back(w);
        out.parseval.push_back(running);
        const double lg = std::log(static_cast<double>(j + 1));
        out.log_weighted_sum += to_double(sq) * lg * lg;
    }
    if (integral) {
        out.integral = integral;
        out.bessel_residual = *integral - to_double(running);
    }
    return out;
}

#define ORTHOMAT_INSTANTIATE(K)                                                                                 \
    template ConnectionTable<Root<K>> connection_table(const PolynomialSystem<K>&, const PolynomialSystem<K>&, \
                                                       std::size_t);                                            \
    template ConnectionTable<K> monic_connection_table(const PolynomialSystem<K>&, const PolynomialSystem<K>&, \
                                                       std::size_t);                                            \
    template K closed_form_gamma(const RecurrenceCoefficients<K>&, const RecurrenceCoefficients<K>&,           \
                                 std::size_t, std::size_t);                                                     \
    template RibbonReport<K> ribbon_check(const PolynomialSystem<K>&, const MomentSequence<K>&, std::size_t,   \
                                          std::size_t, double);                                                 \
    template RibbonPair<K> builtin_ribbon_pair<K>(std::size_t);                                                 \
    template RNExpansion<K> rn_expansion(const MomentSequence<K>&, const PolynomialSystem<K>&, std::size_t,    \
                                         std::optional<double>);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat
