#include "orthomat/linearize.hpp"

namespace orthomat {

namespace {

template <class K>
void require_order(const PolynomialSystem<K>& sys, std::size_t n, std::size_t m)
{
    if (n + m > sys.order) {
        throw PreconditionError("linearization: n + m = " + std::to_string(n + m) + " exceeds system order " +
                                std::to_string(sys.order) + " (needs moments up to m_" + std::to_string(2 * (n + m)) +
                                ")");
    }
}

template <class T, class Poly, class Inv>
std::vector<T> triple_sum(std::size_t n, std::size_t m, const Poly& poly, const Inv& inv)
{
    std::vector<T> c(n + m + 1, T(0));
    for (std::size_t s = 0; s <= n + m; ++s) {
        T acc(0);
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t k = 0; k <= m; ++k) {
                if (j + k < s) continue;
                acc += poly(n, j) * poly(m, k) * inv(j + k, s);
            }
        c[s] = acc;
    }
    return c;
}

}  // namespace

template <class K>
LinearizationTable<Root<K>> linearization_table(const PolynomialSystem<K>& sys, std::size_t n, std::size_t m)
{
    require_order(sys, n, m);
    LinearizationTable<Root<K>> t;
    t.n = n;
    t.m = m;
    t.basis = Basis::Orthonormal;
    t.c = triple_sum<Root<K>>(n, m, sys.Pi, sys.Lambda);
    return t;
}

template <class K>
LinearizationTable<K> monic_linearization_table(const PolynomialSystem<K>& sys, std::size_t n, std::size_t m)
{
    require_order(sys, n, m);
    LinearizationTable<K> t;
    t.n = n;
    t.m = m;
    t.basis = Basis::Monic;
    t.c = triple_sum<K>(n, m, sys.eta, sys.tau);
    return t;
}

template <class K>
K closed_form_linearization(const RecurrenceCoefficients<K>& rec, std::size_t n, std::size_t m, std::size_t s,
                            LinearizationForm form)
{
    const std::size_t hi = std::max(n, m);
    const std::size_t lo = std::min(n, m);
    const bool first = s + 1 == n + m;
    const bool second = s + 2 == n + m;
    if (!first && !second) {
        throw PreconditionError("closed_form_linearization: only s = n+m-1 and s = n+m-2 are covered");
    }
    auto b_sum = [&](std::size_t from, std::size_t to_excl) {
        K acc(0);
        for (std::size_t j = from; j < to_excl; ++j) acc += rec.b(j);
        return acc;
    };
    auto b2_sum = [&](std::size_t from, std::size_t to_excl) {
        K acc(0);
        for (std::size_t j = from; j < to_excl; ++j) acc += rec.b(j) * rec.b(j);
        return acc;
    };
    auto a2_sum = [&](std::size_t from, std::size_t to_excl) {
        K acc(0);
        for (std::size_t j = from; j < to_excl; ++j) acc += rec.a2(j);
        return acc;
    };

    if (form == LinearizationForm::Statement) {
        if (first) {
            K acc(0);
            for (std::size_t j = hi; j + 1 <= n + m; ++j) acc += rec.b(j) - rec.b(j - hi);
            return acc;
        }
        const K a_part = a2_sum(hi, n + m) - a2_sum(1, lo);
        const K lin = b_sum(hi, n + m - 1) - b_sum(0, lo);
        const K quad = b2_sum(hi, n + m - 1) - b2_sum(0, lo);
        return a_part - lin * lin / 2 - quad / 2;
    }
    if (first) return b_sum(0, n + m) - b_sum(0, n) - b_sum(0, m);
    const K bn = b_sum(0, n);
    const K bm = b_sum(0, m);
    return a2_sum(1, n + m) - a2_sum(1, n) - a2_sum(1, m) - (bn + bm) * b_sum(0, n + m - 1) + bn * bm;
}

#define ORTHOMAT_INSTANTIATE(K)                                                                                \
    template LinearizationTable<Root<K>> linearization_table(const PolynomialSystem<K>&, std::size_t,          \
                                                             std::size_t);                                     \
    template LinearizationTable<K> monic_linearization_table(const PolynomialSystem<K>&, std::size_t,          \
                                                             std::size_t);                                     \
    template K closed_form_linearization(const RecurrenceCoefficients<K>&, std::size_t, std::size_t,          \
                                         std::size_t, LinearizationForm);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat
