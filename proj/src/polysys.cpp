#include "orthomat/polysys.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace orthomat {

namespace {

template <class K>
void require_degree(const PolynomialSystem<K>& sys, std::size_t k, const char* what)
{
    if (k > sys.order) {
        throw PreconditionError(std::string(what) + ": degree " + std::to_string(k) +
                                " exceeds system order " + std::to_string(sys.order));
    }
}

// p_0(x)..p_n(x) in one forward pass.
template <class K>
std::vector<Root<K>> eval_all(const PolynomialSystem<K>& sys, const K& x)
{
    using R = Root<K>;
    std::vector<R> p(sys.order + 1);
    p[0] = R(1);
    for (std::size_t j = 0; j < sys.order; ++j) {
        const R shifted = R(K(x - sys.rec.b(j))) * p[j];
        const R back = j == 0 ? R(0) : R(sys.rec.a(j) * p[j - 1]);
        p[j + 1] = (shifted - back) / sys.rec.a(j + 1);
    }
    return p;
}

double sum_powers(double x, std::size_t n)
{
    double s = 0.0;
    double x2 = 1.0;
    for (std::size_t i = 0; i <= n; ++i) {
        s += x2;
        x2 *= x * x;
    }
    return s;
}

template <class K>
DiagnosticLine compare_line(std::string name, const K& lhs, const K& rhs, double tol)
{
    DiagnosticLine l;
    l.name = std::move(name);
    l.lhs = to_double(lhs);
    l.rhs = to_double(rhs);
    l.pass = approx_equal(lhs, rhs, tol);
    return l;
}

}  // namespace

template <class K>
PolynomialSystem<K> build_system(const MomentSequence<K>& m, std::size_t n, double pivot_tol)
{
    using F = FieldTraits<K>;
    PolynomialSystem<K> sys{m, n, hankel_matrix(m, n), {}, {}, {}, {}, {}, {}};
    sys.L = cholesky_decompose(sys.hankel, pivot_tol);
    sys.Pi = invert_lower_triangular(sys.L, TableRole::Pi);
    sys.Lambda = sys.L;
    sys.Lambda.set_role(TableRole::Lambda);
    sys.eta = TriangularTable<K>(n, TableRole::Eta);
    sys.tau = TriangularTable<K>(n, TableRole::Tau);
    for (std::size_t r = 0; r <= n; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            sys.eta.at(r, c) = F::root_to_field(sys.Pi(r, c) / sys.Pi(r, r));
            sys.tau.at(r, c) = F::root_to_field(sys.L(r, c) / sys.L(c, c));
        }
    }
    sys.rec = recurrence_from_tables(sys);
    return sys;
}

template <class K>
RecurrenceCoefficients<K> recurrence_from_tables(const PolynomialSystem<K>& sys)
{
    using F = FieldTraits<K>;
    const auto& pi = sys.Pi;
    std::vector<K> a2;
    std::vector<K> b;
    for (std::size_t n = 1; n <= sys.order; ++n) a2.push_back(F::root_square(pi(n - 1, n - 1) / pi(n, n)));
    for (std::size_t n = 0; n < sys.order; ++n) {
        const K upper = F::root_to_field(pi(n + 1, n) / pi(n + 1, n + 1));
        const K lower = n == 0 ? K(0) : F::root_to_field(pi(n, n - 1) / pi(n, n));
        b.push_back(K(lower - upper));
    }
    return RecurrenceCoefficients<K>(std::move(a2), std::move(b));
}

template <class K>
RecurrenceCoefficients<K> recurrence_from_determinants(const PolynomialSystem<K>& sys)
{
    using F = FieldTraits<K>;
    const auto& d = sys.hankel.deltas;
    const auto& l = sys.L;
    std::vector<K> a2;
    std::vector<K> b;
    for (std::size_t n = 1; n <= sys.order; ++n) {
        const K before = n >= 2 ? d[n - 2] : K(1);
        a2.push_back(K(d[n] * before / (d[n - 1] * d[n - 1])));
    }
    for (std::size_t n = 0; n < sys.order; ++n) {
        const K upper = F::root_to_field(l(n + 1, n) / l(n, n));
        const K lower = n == 0 ? K(0) : F::root_to_field(l(n, n - 1) / l(n - 1, n - 1));
        b.push_back(K(upper - lower));
    }
    return RecurrenceCoefficients<K>(std::move(a2), std::move(b));
}

template <class K>
Root<K> eval_poly(const PolynomialSystem<K>& sys, std::size_t k, const K& x)
{
    require_degree(sys, k, "eval_poly");
    using R = Root<K>;
    R prev(0);
    R cur(1);
    for (std::size_t j = 0; j < k; ++j) {
        const R shifted = R(K(x - sys.rec.b(j))) * cur;
        const R back = j == 0 ? R(0) : R(sys.rec.a(j) * prev);
        R next = (shifted - back) / sys.rec.a(j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class K>
K eval_monic(const PolynomialSystem<K>& sys, std::size_t k, const K& x)
{
    require_degree(sys, k, "eval_monic");
    K prev(0);
    K cur(1);
    for (std::size_t j = 0; j < k; ++j) {
        K next = (x - sys.rec.b(j)) * cur;
        if (j > 0) next -= sys.rec.a2(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class K>
Root<K> eval_from_table(const PolynomialSystem<K>& sys, std::size_t k, const K& x)
{
    require_degree(sys, k, "eval_from_table");
    using R = Root<K>;
    R acc(0);
    K xp(1);
    for (std::size_t i = 0; i <= k; ++i) {
        acc += sys.Pi(k, i) * R(xp);
        xp *= x;
    }
    return acc;
}

template <class K>
TriangularTable<Root<K>> associated_polys(const PolynomialSystem<K>& sys)
{
    using R = Root<K>;
    const std::size_t n = sys.order;
    TriangularTable<R> q(n, TableRole::Other);
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t k = 0; k < r; ++k) {
            R acc(0);
            for (std::size_t j = k + 1; j <= r; ++j) acc += sys.Pi(r, j) * R(sys.moments[j - 1 - k]);
            q.at(r, k) = acc;
        }
    }
    return q;
}

template <class K>
Root<K> eval_associated(const PolynomialSystem<K>& sys, std::size_t k, const K& x)
{
    require_degree(sys, k, "eval_associated");
    using R = Root<K>;
    if (k == 0) return R(0);
    R prev(0);
    R cur = R(1) / sys.rec.a(1);
    for (std::size_t j = 1; j < k; ++j) {
        R next = (R(K(x - sys.rec.b(j))) * cur - sys.rec.a(j) * prev) / sys.rec.a(j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class K>
K kernel(const PolynomialSystem<K>& sys, const K& x, const K& y)
{
    using R = Root<K>;
    const auto px = eval_all(sys, x);
    const auto py = eval_all(sys, y);
    R acc(0);
    for (std::size_t i = 0; i <= sys.order; ++i) acc += px[i] * py[i];
    return FieldTraits<K>::root_to_field(acc);
}

template <class K>
Matrix<K> inverse_moment_matrix(const PolynomialSystem<K>& sys)
{
    using F = FieldTraits<K>;
    const std::size_t n = sys.order;
    Matrix<K> mu(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            K acc(0);
            for (std::size_t k = i; k <= n; ++k) acc += F::root_to_field(sys.Pi(k, i) * sys.Pi(k, j));
            mu(i, j) = acc;
            mu(j, i) = acc;
        }
    }
    return mu;
}

template <class K>
K kernel_via_inverse(const PolynomialSystem<K>& sys, const K& x, const K& y)
{
    const Matrix<K> mu = inverse_moment_matrix(sys);
    const std::size_t n = sys.order;
    std::vector<K> xp(n + 1, K(1));
    std::vector<K> yp(n + 1, K(1));
    for (std::size_t i = 1; i <= n; ++i) {
        xp[i] = xp[i - 1] * x;
        yp[i] = yp[i - 1] * y;
    }
    K acc(0);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) acc += xp[i] * mu(i, j) * yp[j];
    return acc;
}

template <class K>
K christoffel(const PolynomialSystem<K>& sys, const K& x)
{
    return K(1) / kernel(sys, x, x);
}

template <class K>
SpectralDiagnostics<K> diagnostics(const PolynomialSystem<K>& sys, const std::vector<double>& points, double tol)
{
    using F = FieldTraits<K>;
    SpectralDiagnostics<K> out;
    const std::size_t n = sys.order;
    const auto& m = sys.moments;
    out.inverse = inverse_moment_matrix(sys);
    const Matrix<K>& mu = out.inverse;

    if constexpr (!is_exact_v<K>) {
        Eigen::MatrixXd a(n + 1, n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j)
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(sys.hankel.entries(i, j));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
        if (solver.info() != Eigen::Success) {
            throw PreconditionError("diagnostics: eigenvalue computation did not converge");
        }
        const Eigen::VectorXd ev = solver.eigenvalues();
        out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
        const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
        for (Eigen::Index j = 0; j < ev.size(); ++j) {
            const Eigen::VectorXd v = solver.eigenvectors().col(j);
            out.eigen_residual = std::max(out.eigen_residual, (a * v - ev(j) * v).norm() / norm);
        }
        out.lines.push_back({"eigen residual ||Mv - xi v|| <= 1e-8 ||M||", out.eigen_residual, 1e-8,
                             out.eigen_residual <= 1e-8, false});
    }

    // Trace identities.
    K trace_m(0);
    for (std::size_t i = 0; i <= n; ++i) trace_m += m[2 * i];
    K trace_inv(0);
    for (std::size_t i = 0; i <= n; ++i) trace_inv += mu(i, i);
    K trace_pipt(0);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= i; ++j) trace_pipt += F::root_square(sys.Pi(i, j));
    out.lines.push_back(compare_line<K>("trace(Pi Pi^T) = trace(M^-1)", trace_pipt, trace_inv, tol));

    if (!out.eigenvalues.empty()) {
        double sum_ev = 0.0;
        double sum_inv_ev = 0.0;
        for (double e : out.eigenvalues) {
            sum_ev += e;
            sum_inv_ev += 1.0 / e;
        }
        out.lines.push_back(compare_line<double>("sum m_2i = sum of eigenvalues", to_double(trace_m), sum_ev, tol));
        // 1/xi_min carries a relative error of about eps * cond(M_n).
        const double cond = out.eigenvalues.back() / out.eigenvalues.front();
        const double inv_tol = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon() * cond);
        out.lines.push_back(
            compare_line<double>("trace(M^-1) = sum 1/eigenvalue", to_double(trace_inv), sum_inv_ev, inv_tol));
    }

    // Values at zero.
    const TriangularTable<Root<K>> q = associated_polys(sys);
    K p0_sq(0);
    K q0_sq(0);
    K qp(0);
    for (std::size_t j = 0; j <= n; ++j) p0_sq += F::root_square(sys.Pi(j, 0));
    for (std::size_t j = 1; j <= n; ++j) {
        q0_sq += F::root_square(q(j, 0));
        qp += F::root_to_field(q(j, 0) * sys.Pi(j, 0));
    }
    out.lines.push_back(compare_line<K>("sum p_j(0)^2 = mu_00", p0_sq, mu(0, 0), tol));

    K quad(0);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) quad += mu(i, j) * m[i - 1] * m[j - 1];
    out.lines.push_back(compare_line<K>("sum q_j(0)^2 = sum mu_ij m_{i-1} m_{j-1}", q0_sq, quad, tol));

    K cross(0);
    for (std::size_t j = 1; j <= n; ++j) cross += m[j - 1] * mu(0, j);
    out.lines.push_back(compare_line<K>("sum q_j(0) p_j(0) = sum m_{j-1} mu_0j", qp, cross, tol));

    if (!out.eigenvalues.empty()) {
        const double lo = out.eigenvalues.front();
        const double hi = out.eigenvalues.back();
        const double slack = 1.0 + tol;
        const double p0 = to_double(p0_sq);
        out.lines.push_back({"1/xi_max <= sum p_j(0)^2 <= 1/xi_min", p0, 1.0 / lo,
                             1.0 / hi <= p0 * slack && p0 <= slack / lo, false});

        double short_sum = 0.0;  // sum_{j=1}^{n-1} m_j^2
        for (std::size_t j = 1; j + 1 <= n; ++j) short_sum += std::pow(to_double(m[j]), 2);
        double full = 0.0;  // sum_{j=0}^{n-1} m_j^2, the norm of (0, m_0, .., m_{n-1})
        for (std::size_t j = 0; j < n; ++j) full += std::pow(to_double(m[j]), 2);
        const double qs = to_double(q0_sq);
        out.lines.push_back({"sandwich with sum_{j=1}^{n-1} m_j^2 (upper limit n-1)", qs, short_sum / lo,
                             short_sum / hi <= qs * slack && qs <= slack * short_sum / lo, true});
        out.lines.push_back({"sandwich with sum_{j=0}^{n-1} m_j^2", qs, full / lo,
                             full / hi <= qs * slack && qs <= slack * full / lo, true});

        // Kernel bounds at sample points.
        double worst_upper = 0.0;
        double worst_lower = 0.0;
        double worst_offdiag = 0.0;
        double worst_kernel = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double x = points[i];
            const double y = points[(i + 1) % points.size()];
            const K kx = F::from_double(x);
            const K ky = F::from_double(y);
            const double sx = sum_powers(x, n);
            const double sy = sum_powers(y, n);
            const double kxx = to_double(kernel(sys, kx, kx));
            const double kxy = to_double(kernel(sys, kx, ky));
            const double chris = 1.0 / kxx;
            worst_lower = std::max(worst_lower, (lo / sx) / chris);
            worst_upper = std::max(worst_upper, chris / (hi / sx));
            worst_offdiag = std::max(worst_offdiag, std::abs(kxy) / (std::sqrt(sx * sy) / lo));
            const double kinv = to_double(kernel_via_inverse(sys, kx, ky));
            worst_kernel = std::max(worst_kernel, std::abs(kxy - kinv) / std::max(1.0, std::abs(kinv)));
        }
        if (!points.empty()) {
            out.lines.push_back({"xi_min/S(x) <= christoffel(x) [worst ratio]", worst_lower, 1.0,
                                 worst_lower <= 1.0 + tol, false});
            out.lines.push_back({"christoffel(x) <= xi_max/S(x) [worst ratio]", worst_upper, 1.0,
                                 worst_upper <= 1.0 + tol, false});
            out.lines.push_back({"|K(x,y)| <= sqrt(S(x)S(y))/xi_min [worst ratio]", worst_offdiag, 1.0,
                                 worst_offdiag <= 1.0 + tol, false});
            out.lines.push_back({"K(x,y) = X^T M^-1 Y [worst relative gap]", worst_kernel, 0.0,
                                 worst_kernel <= std::sqrt(tol), false});
        }
    }
    return out;
}

#define ORTHOMAT_INSTANTIATE(K)                                                                          \
    template PolynomialSystem<K> build_system(const MomentSequence<K>&, std::size_t, double);            \
    template RecurrenceCoefficients<K> recurrence_from_tables(const PolynomialSystem<K>&);               \
    template RecurrenceCoefficients<K> recurrence_from_determinants(const PolynomialSystem<K>&);         \
    template Root<K> eval_poly(const PolynomialSystem<K>&, std::size_t, const K&);                       \
    template K eval_monic(const PolynomialSystem<K>&, std::size_t, const K&);                            \
    template Root<K> eval_from_table(const PolynomialSystem<K>&, std::size_t, const K&);                 \
    template TriangularTable<Root<K>> associated_polys(const PolynomialSystem<K>&);                      \
    template Root<K> eval_associated(const PolynomialSystem<K>&, std::size_t, const K&);                 \
    template K kernel(const PolynomialSystem<K>&, const K&, const K&);                                   \
    template K kernel_via_inverse(const PolynomialSystem<K>&, const K&, const K&);                       \
    template K christoffel(const PolynomialSystem<K>&, const K&);                                        \
    template Matrix<K> inverse_moment_matrix(const PolynomialSystem<K>&);                                \
    template SpectralDiagnostics<K> diagnostics(const PolynomialSystem<K>&, const std::vector<double>&, \
                                                double);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat
