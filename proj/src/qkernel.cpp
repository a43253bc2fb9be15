#include "orthomat/qkernel.hpp"

#include <cmath>

namespace orthomat {

template <class K>
K q_bracket(std::size_t n, const K& q)
{
    K acc(0);
    K qp(1);
    for (std::size_t i = 0; i < n; ++i) {
        acc += qp;
        qp *= q;
    }
    return acc;
}

template <class K>
K q_factorial(std::size_t n, const K& q)
{
    K acc(1);
    for (std::size_t j = 1; j <= n; ++j) acc *= q_bracket(j, q);
    return acc;
}

template <class K>
K q_pochhammer(const K& a, std::size_t n, const K& q)
{
    K acc(1);
    K aq = a;
    for (std::size_t i = 0; i < n; ++i) {
        acc *= K(1) - aq;
        aq *= q;
    }
    return acc;
}

template <class K>
K q_hermite(std::size_t n, const K& x, const K& q)
{
    K prev(0);
    K cur(1);
    K bracket(0);  // [j]_q
    K qp(1);
    for (std::size_t j = 0; j < n; ++j) {
        K next = x * cur - bracket * prev;
        prev = cur;
        cur = next;
        bracket += qp;
        qp *= q;
    }
    return cur;
}

template <class K>
Root<K> q_hermite_orthonormal(std::size_t n, const K& x, const K& q)
{
    using R = Root<K>;
    return R(q_hermite(n, x, q)) / FieldTraits<K>::sqrt(q_factorial(n, q));
}

template <class K>
RecurrenceCoefficients<K> q_hermite_recurrence(const K& q, std::size_t count)
{
    std::vector<K> a2;
    for (std::size_t n = 1; n <= count; ++n) a2.push_back(q_bracket(n, q));
    return RecurrenceCoefficients<K>(std::move(a2), std::vector<K>(count, K(0)));
}

template <class K>
RecurrenceCoefficients<K> al_salam_chihara_recurrence(const K& y, const K& rho, const K& q, std::size_t count)
{
    std::vector<K> a2;
    std::vector<K> b;
    K qp(1);  // q^{n-1} in the a-loop, q^n in the b-loop
    for (std::size_t n = 0; n < count; ++n) {
        b.push_back(rho * y * qp);
        a2.push_back(K(K(1) - rho * rho * qp) * q_bracket(n + 1, q));
        qp *= q;
    }
    return RecurrenceCoefficients<K>(std::move(a2), std::move(b));
}

void QParams::validate() const
{
    if (!(std::abs(q) < 1.0)) throw InputError("q must satisfy |q| < 1");
    if (!(std::abs(rho) < 1.0)) throw InputError("rho must satisfy |rho| < 1");
}

double QParams::support_bound() const
{
    return 2.0 / std::sqrt(1.0 - q);
}

bool QParams::in_support(double x) const
{
    return std::abs(x) <= support_bound();
}

PMValue pm_product(double x, double y, const QParams& p, double tol)
{
    p.validate();
    const double q = p.q;
    const double r = p.rho;
    double value = 1.0;
    double qk = 1.0;  // q^k
    for (std::size_t k = 0; k < pm_max_terms; ++k) {
        const double q2k = qk * qk;
        const double w = std::pow(1.0 - r * r * q2k, 2) - (1.0 - q) * r * qk * (1.0 + r * r * q2k) * x * y +
                         (1.0 - q) * r * r * (x * x + y * y) * q2k;
        if (!(w > 0.0)) {
            throw PreconditionError("pm_product: w_" + std::to_string(k) + " = " + format_value(w) +
                                    " is not positive; x, y outside S(q)?");
        }
        const double factor = (1.0 - r * r * qk) / w;
        value *= factor;
        if (std::abs(factor - 1.0) < tol && std::abs(qk) < tol) return {value, k + 1};
        qk *= q;
    }
    throw PreconditionError("pm_product: no convergence within " + std::to_string(pm_max_terms) + " factors");
}

PMValue pm_series(double x, double y, const QParams& p, double tol)
{
    p.validate();
    constexpr std::size_t quiet_run = 4;
    const double q = p.q;
    double hx_prev = 0.0;
    double hx = 1.0;
    double hy_prev = 0.0;
    double hy = 1.0;
    double rho_j = 1.0;
    double sum = 0.0;
    std::size_t quiet = 0;
    double bracket = 0.0;  // [j]_q
    double qp = 1.0;       // q^j
    for (std::size_t j = 0; j < pm_max_terms; ++j) {
        const double term = rho_j * hx * hy;
        sum += term;
        quiet = std::abs(term) < tol ? quiet + 1 : 0;
        if (quiet >= quiet_run && std::abs(rho_j) < tol) return {sum, j + 1};
        const double next_bracket = bracket + qp;  // [j+1]_q
        const double s_next = std::sqrt(next_bracket);
        const double s_cur = std::sqrt(bracket);
        const double hx_next = (x * hx - s_cur * hx_prev) / s_next;
        const double hy_next = (y * hy - s_cur * hy_prev) / s_next;
        hx_prev = hx;
        hx = hx_next;
        hy_prev = hy;
        hy = hy_next;
        bracket = next_bracket;
        qp *= q;
        rho_j *= p.rho;
    }
    throw PreconditionError("pm_series: terms still above tolerance after " + std::to_string(pm_max_terms) +
                            " terms");
}

std::vector<double> default_pm_grid(double q)
{
    const double edge = 1.9 / std::sqrt(1.0 - q);
    return {0.0, 1.0, -1.0, edge, -edge};
}

std::vector<PMPoint> pm_compare(const QParams& p, const std::vector<double>& grid, double tol)
{
    p.validate();
    std::vector<PMPoint> out;
    for (double x : grid) {
        if (!p.in_support(x)) {
            throw InputError("grid point " + format_value(x) + " outside S(q) = [-" + format_value(p.support_bound()) +
                             ", " + format_value(p.support_bound()) + "]");
        }
    }
    for (double x : grid)
        for (double y : grid) {
            PMPoint pt;
            pt.x = x;
            pt.y = y;
            pt.product = pm_product(x, y, p, tol);
            pt.series = pm_series(x, y, p, tol);
            pt.error = std::abs(pt.product.value - pt.series.value);
            out.push_back(pt);
        }
    return out;
}

#define ORTHOMAT_INSTANTIATE(K)                                                                          \
    template K q_bracket(std::size_t, const K&);                                                         \
    template K q_factorial(std::size_t, const K&);                                                       \
    template K q_pochhammer(const K&, std::size_t, const K&);                                            \
    template K q_hermite(std::size_t, const K&, const K&);                                               \
    template Root<K> q_hermite_orthonormal(std::size_t, const K&, const K&);                             \
    template RecurrenceCoefficients<K> q_hermite_recurrence(const K&, std::size_t);                      \
    template RecurrenceCoefficients<K> al_salam_chihara_recurrence(const K&, const K&, const K&, std::size_t);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat
