#include "orthomat/recurrence.hpp"

#include <functional>
#include <sstream>

namespace orthomat {

namespace {

template <class K>
void require_table_order(const RecurrenceCoefficients<K>& rec, std::size_t n, const char* what)
{
    if (n > 0 && rec.max_table_order() < n) {
        throw PreconditionError(std::string(what) + ": order " + std::to_string(n) +
                                " needs a_1^2..a_" + std::to_string(n - 1) + "^2 and b_0..b_" +
                                std::to_string(n - 1));
    }
}

// Generic two-term fills used by eta/tau and by the auxiliary recursions.
// A null coefficient vector means "identically zero".
template <class K>
TriangularTable<K> fill_eta_like(std::size_t n, TableRole role, const std::function<K(std::size_t)>* a2,
                                 const std::function<K(std::size_t)>* b)
{
    TriangularTable<K> t(n, role);
    t.at(0, 0) = K(1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j <= r + 1; ++j) {
            K v = j >= 1 ? t(r, j - 1) : K(0);
            if (b != nullptr && j <= r) v -= (*b)(r) * t(r, j);
            if (a2 != nullptr && r >= 1 && j <= r - 1) v -= (*a2)(r) * t(r - 1, j);
            t.at(r + 1, j) = v;
        }
    }
    return t;
}

template <class K>
TriangularTable<K> fill_tau_like(std::size_t n, TableRole role, const std::function<K(std::size_t)>* a2,
                                 const std::function<K(std::size_t)>* b)
{
    TriangularTable<K> t(n, role);
    t.at(0, 0) = K(1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j <= r + 1; ++j) {
            K v = j >= 1 ? t(r, j - 1) : K(0);
            if (b != nullptr && j <= r) v += (*b)(j) * t(r, j);
            if (a2 != nullptr && j + 1 <= r) v += (*a2)(j + 1) * t(r, j + 1);
            t.at(r + 1, j) = v;
        }
    }
    return t;
}

// ---- closed forms, evaluated as nested sums (memoized) --------

// (-1)^k sum_{j1=1}^{R-2k+1} a_{j1}^2 sum_{j2=j1+2}^{R-2k+3} ... sum_{jk=j_{k-1}+2}^{R-1} a_{jk}^2
template <class K>
K xi1_closed(const RecurrenceCoefficients<K>& rec, std::size_t row, std::size_t col)
{
    const std::size_t gap = row - col;
    if (gap % 2 == 1) return K(0);
    const std::size_t k = gap / 2;
    if (k == 0) return K(1);
    // memo[m][s]: sum over j_m >= s of the remaining nested sums
    std::vector<std::vector<K>> memo(k + 2, std::vector<K>(row + 3, K(0)));
    std::vector<std::vector<bool>> done(k + 2, std::vector<bool>(row + 3, false));
    std::function<K(std::size_t, std::size_t)> nested = [&](std::size_t m, std::size_t start) -> K {
        if (m > k) return K(1);
        if (start > row + 1) return K(0);
        if (done[m][start]) return memo[m][start];
        const std::size_t upper = row + 2 * m - 2 * k - 1;  // R - 2k + 2m - 1
        K acc(0);
        for (std::size_t j = start; j <= upper; ++j) acc += rec.a2(j) * nested(m + 1, j + 2);
        done[m][start] = true;
        memo[m][start] = acc;
        return acc;
    };
    K v = nested(1, 1);
    return k % 2 == 0 ? v : K(-v);
}

// (-1)^j sum_{0<=k1<...<kj<=R-1} prod b_{km}
template <class K>
K xi2_closed(const RecurrenceCoefficients<K>& rec, std::size_t row, std::size_t col)
{
    const std::size_t j = row - col;
    if (j == 0) return K(1);
    std::vector<std::vector<K>> memo(j + 2, std::vector<K>(row + 2, K(0)));
    std::vector<std::vector<bool>> done(j + 2, std::vector<bool>(row + 2, false));
    std::function<K(std::size_t, std::size_t)> nested = [&](std::size_t m, std::size_t start) -> K {
        if (m > j) return K(1);
        if (start >= row) return K(0);
        if (done[m][start]) return memo[m][start];
        K acc(0);
        for (std::size_t kk = start; kk + (j - m) <= row - 1; ++kk) acc += rec.b(kk) * nested(m + 1, kk + 1);
        done[m][start] = true;
        memo[m][start] = acc;
        return acc;
    };
    K v = nested(1, 0);
    return j % 2 == 0 ? v : K(-v);
}

// sum_{j1=1}^{n+1} a_{j1}^2 sum_{j2=1}^{j1+1} a_{j2}^2 ... sum_{jk=1}^{j_{k-1}+1} a_{jk}^2
template <class K>
K zeta1_closed(const RecurrenceCoefficients<K>& rec, std::size_t row, std::size_t col)
{
    const std::size_t gap = row - col;
    if (gap % 2 == 1) return K(0);
    const std::size_t k = gap / 2;
    if (k == 0) return K(1);
    const std::size_t max_upper = col + k + 1;
    std::vector<std::vector<K>> memo(k + 2, std::vector<K>(max_upper + 2, K(0)));
    std::vector<std::vector<bool>> done(k + 2, std::vector<bool>(max_upper + 2, false));
    std::function<K(std::size_t, std::size_t)> nested = [&](std::size_t m, std::size_t upper) -> K {
        if (m > k) return K(1);
        if (done[m][upper]) return memo[m][upper];
        K acc(0);
        for (std::size_t jm = 1; jm <= upper; ++jm) acc += rec.a2(jm) * nested(m + 1, jm + 1);
        done[m][upper] = true;
        memo[m][upper] = acc;
        return acc;
    };
    return nested(1, col + 1);
}

// sum_{k1=0}^{n} b_{k1} sum_{k2=k1}^{n} b_{k2} ... sum_{kj=k_{j-1}}^{n} b_{kj}
template <class K>
K zeta2_closed(const RecurrenceCoefficients<K>& rec, std::size_t row, std::size_t col)
{
    const std::size_t j = row - col;
    if (j == 0) return K(1);
    std::vector<std::vector<K>> memo(j + 2, std::vector<K>(col + 2, K(0)));
    std::vector<std::vector<bool>> done(j + 2, std::vector<bool>(col + 2, false));
    std::function<K(std::size_t, std::size_t)> nested = [&](std::size_t m, std::size_t start) -> K {
        if (m > j) return K(1);
        if (done[m][start]) return memo[m][start];
        K acc(0);
        for (std::size_t kk = start; kk <= col; ++kk) acc += rec.b(kk) * nested(m + 1, kk);
        done[m][start] = true;
        memo[m][start] = acc;
        return acc;
    };
    return nested(1, 0);
}

template <class K>
struct CheckBuilder {
    IdentityCheck check;
    double tol;

    CheckBuilder(std::string name, bool required, double t) : tol(t)
    {
        check.name = std::move(name);
        check.required = required;
    }

    void compare(std::size_t row, std::size_t col, const K& table, const K& formula)
    {
        ++check.entries_checked;
        if (check.pass && !approx_equal(table, formula, tol)) {
            check.pass = false;
            std::ostringstream os;
            os << "(" << row << "," << col << "): recursion=" << format_value(table)
               << " closed-form=" << format_value(formula);
            check.first_mismatch = os.str();
        }
    }
};

template <class K>
RecurrenceCoefficients<K> without_b(const RecurrenceCoefficients<K>& rec)
{
    return RecurrenceCoefficients<K>(rec.a2_from_one(), std::vector<K>(rec.b_count(), K(0)));
}

}  // namespace

template <class K>
TriangularTable<K> eta_table(const RecurrenceCoefficients<K>& rec, std::size_t n)
{
    require_table_order(rec, n, "eta_table");
    const std::function<K(std::size_t)> a2 = [&](std::size_t i) { return rec.a2(i); };
    const std::function<K(std::size_t)> b = [&](std::size_t i) { return rec.b(i); };
    return fill_eta_like<K>(n, TableRole::Eta, &a2, &b);
}

template <class K>
TriangularTable<K> tau_table(const RecurrenceCoefficients<K>& rec, std::size_t n)
{
    require_table_order(rec, n, "tau_table");
    const std::function<K(std::size_t)> a2 = [&](std::size_t i) { return rec.a2(i); };
    const std::function<K(std::size_t)> b = [&](std::size_t i) { return rec.b(i); };
    return fill_tau_like<K>(n, TableRole::Tau, &a2, &b);
}

template <class K>
AuxTables<K> aux_tables(const RecurrenceCoefficients<K>& rec, std::size_t n, AuxFill fill)
{
    require_table_order(rec, n, "aux_tables");
    AuxTables<K> out;
    if (fill == AuxFill::Recursion) {
        const std::function<K(std::size_t)> a2 = [&](std::size_t i) { return rec.a2(i); };
        const std::function<K(std::size_t)> b = [&](std::size_t i) { return rec.b(i); };
        out.xi1 = fill_eta_like<K>(n, TableRole::XiZeta, &a2, nullptr);
        out.xi2 = fill_eta_like<K>(n, TableRole::XiZeta, nullptr, &b);
        out.zeta1 = fill_tau_like<K>(n, TableRole::XiZeta, &a2, nullptr);
        out.zeta2 = fill_tau_like<K>(n, TableRole::XiZeta, nullptr, &b);
        return out;
    }
    out.xi1 = TriangularTable<K>(n, TableRole::XiZeta);
    out.xi2 = TriangularTable<K>(n, TableRole::XiZeta);
    out.zeta1 = TriangularTable<K>(n, TableRole::XiZeta);
    out.zeta2 = TriangularTable<K>(n, TableRole::XiZeta);
    for (std::size_t r = 0; r <= n; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            out.xi1.at(r, c) = xi1_closed(rec, r, c);
            out.xi2.at(r, c) = xi2_closed(rec, r, c);
            out.zeta1.at(r, c) = zeta1_closed(rec, r, c);
            out.zeta2.at(r, c) = zeta2_closed(rec, r, c);
        }
    }
    return out;
}

bool ClosedFormReport::ok() const
{
    for (const auto& c : checks) {
        if (c.required && !c.pass) return false;
    }
    return true;
}

template <class K>
ClosedFormReport verify_closed_forms(const RecurrenceCoefficients<K>& rec, std::size_t n, double tol)
{
    ClosedFormReport report;
    const AuxTables<K> byrec = aux_tables(rec, n, AuxFill::Recursion);
    const AuxTables<K> closed = aux_tables(rec, n, AuxFill::ClosedForm);

    auto whole_table = [&](const char* name, const TriangularTable<K>& a, const TriangularTable<K>& b) {
        CheckBuilder<K> cb(name, true, tol);
        for (std::size_t r = 0; r <= n; ++r)
            for (std::size_t c = 0; c <= r; ++c) cb.compare(r, c, a(r, c), b(r, c));
        report.checks.push_back(cb.check);
    };
    whole_table("xi1 closed form", byrec.xi1, closed.xi1);
    whole_table("xi2 closed form", byrec.xi2, closed.xi2);
    whole_table("zeta1 closed form", byrec.zeta1, closed.zeta1);
    whole_table("zeta2 closed form", byrec.zeta2, closed.zeta2);

    const TriangularTable<K> eta = eta_table(rec, n);
    const TriangularTable<K> tau = tau_table(rec, n);

    {
        CheckBuilder<K> e("eta(n+1,n) = xi2(n+1,n)", true, tol);
        CheckBuilder<K> t("eta(n+1,n) = -tau(n+1,n)", true, tol);
        for (std::size_t r = 0; r + 1 <= n; ++r) {
            e.compare(r + 1, r, eta(r + 1, r), closed.xi2(r + 1, r));
            t.compare(r + 1, r, eta(r + 1, r), K(-tau(r + 1, r)));
        }
        report.checks.push_back(e.check);
        report.checks.push_back(t.check);
    }
    {
        CheckBuilder<K> e("eta(n+2,n) = xi2 + xi1", true, tol);
        CheckBuilder<K> t("tau(n+2,n) = zeta1 + zeta2", true, tol);
        for (std::size_t r = 0; r + 2 <= n; ++r) {
            e.compare(r + 2, r, eta(r + 2, r), K(closed.xi2(r + 2, r) + closed.xi1(r + 2, r)));
            t.compare(r + 2, r, tau(r + 2, r), K(closed.zeta1(r + 2, r) + closed.zeta2(r + 2, r)));
        }
        report.checks.push_back(e.check);
        report.checks.push_back(t.check);
    }
    {
        // Stated forms of the third and fourth diagonals, evaluated as they stand.
        CheckBuilder<K> t3("tau(n+3,n) stated form", false, tol);
        CheckBuilder<K> e3("eta(n+3,n) stated form [uses xi2(n+3,3)]", false, tol);
        CheckBuilder<K> e4("eta(n+4,n) stated form [a_i inside inner sum]", false, tol);
        CheckBuilder<K> t4("tau(n+4,n) stated form", false, tol);
        for (std::size_t r = 0; r + 3 <= n; ++r) {
            K tv = closed.zeta2(r + 3, r) + closed.zeta1(r + 2, r) * closed.zeta2(r + 1, r);
            for (std::size_t j = 1; j <= r + 1; ++j) tv += rec.a2(j) * K(rec.b(j - 1) + rec.b(j));
            t3.compare(r + 3, r, tau(r + 3, r), tv);

            K ev = closed.xi2(r + 3, 3);
            for (std::size_t j = 1; j <= r + 2; ++j) {
                K inner(0);
                for (std::size_t kk = 0; kk <= r + 2; ++kk) {
                    if (kk == j || kk + 1 == j) continue;
                    inner += rec.b(kk);
                }
                ev += rec.a2(j) * inner;
            }
            e3.compare(r + 3, r, eta(r + 3, r), ev);
        }
        for (std::size_t r = 0; r + 4 <= n; ++r) {
            K ev = closed.xi1(r + 4, r) + closed.xi2(r + 4, r);
            for (std::size_t k = 1; k <= r + 3; ++k) {
                for (std::size_t i = 0; i <= r + 3; ++i) {
                    for (std::size_t j = i + 1; j <= r + 3; ++j) {
                        if (i == k || i + 1 == k || j == k || j + 1 == k) continue;
                        ev += rec.a2(i) * rec.b(i) * rec.b(j);
                    }
                }
            }
            e4.compare(r + 4, r, eta(r + 4, r), ev);

            K tv = -eta(r + 4, r) - eta(r + 4, r + 1) * tau(r + 1, r) - eta(r + 4, r + 2) * tau(r + 2, r) -
                   eta(r + 4, r + 3) * tau(r + 3, r);
            t4.compare(r + 4, r, tau(r + 4, r), tv);
        }
        report.checks.push_back(t3.check);
        report.checks.push_back(e3.check);
        report.checks.push_back(e4.check);
        report.checks.push_back(t4.check);
    }
    {
        const RecurrenceCoefficients<K> sym = without_b(rec);
        const TriangularTable<K> eta0 = eta_table(sym, n);
        const TriangularTable<K> tau0 = tau_table(sym, n);
        CheckBuilder<K> v("eta(n,0) with b = 0", true, tol);
        for (std::size_t r = 1; r <= n; ++r) {
            K expect(0);
            if (r % 2 == 0) {
                expect = K(1);
                for (std::size_t j = 1; j <= r / 2; ++j) expect *= sym.a2(2 * j - 1);
                if ((r / 2) % 2 == 1) expect = -expect;
            }
            v.compare(r, 0, eta0(r, 0), expect);
        }
        report.checks.push_back(v.check);

        CheckBuilder<K> se("eta(n+l,n) = xi1 with b = 0", true, tol);
        CheckBuilder<K> st("tau(n+l,n) = zeta1 with b = 0", true, tol);
        for (std::size_t r = 0; r <= n; ++r) {
            for (std::size_t c = 0; c <= r; ++c) {
                se.compare(r, c, eta0(r, c), closed.xi1(r, c));
                st.compare(r, c, tau0(r, c), closed.zeta1(r, c));
            }
        }
        report.checks.push_back(se.check);
        report.checks.push_back(st.check);
    }
    return report;
}

template <class K>
MomentSequence<K> moments_from_recurrence(const RecurrenceCoefficients<K>& rec, std::size_t count,
                                          std::string label)
{
    if (count == 0) {
        throw PreconditionError("moments_from_recurrence: count must be >= 1");
    }
    std::vector<K> m(count, K(0));
    m[0] = K(1);
    if (count > 1) m[1] = rec.b(0);
    if (count > 2) m[2] = rec.b(0) * rec.b(0) + rec.a2(1);
    if (count > 3) {
        const TriangularTable<K> eta = eta_table(rec, count - 2);
        for (std::size_t j = 3; j < count; ++j) {
            K acc(0);
            for (std::size_t k = 1; k <= j - 1; ++k) acc += eta(j - 1, k - 1) * m[k];
            m[j] = -acc;
        }
        if (rec.symmetric()) {
            // m_2k = (sum_{j=1}^{2k-2} a_j^2) m_{2k-2} - sum_{j=2}^{k-1} eta(2k-1, 2k-1-2j) m_{2k-2j}
            for (std::size_t k = 2; 2 * k < count; ++k) {
                K shortcut(0);
                if (k == 2) {
                    shortcut = rec.a2(1) * K(rec.a2(1) + rec.a2(2));
                } else {
                    K s(0);
                    for (std::size_t j = 1; j <= 2 * k - 2; ++j) s += rec.a2(j);
                    shortcut = s * m[2 * k - 2];
                    for (std::size_t j = 2; j <= k - 1; ++j)
                        shortcut -= eta(2 * k - 1, 2 * k - 1 - 2 * j) * m[2 * k - 2 * j];
                }
                if (!approx_equal(shortcut, m[2 * k], 1e-9)) {
                    throw std::logic_error("symmetric moment shortcut disagrees at m_" + std::to_string(2 * k));
                }
            }
        }
    }
    return MomentSequence<K>(std::move(m), std::move(label));
}

#define ORTHOMAT_INSTANTIATE(K)                                                                          \
    template TriangularTable<K> eta_table(const RecurrenceCoefficients<K>&, std::size_t);                \
    template TriangularTable<K> tau_table(const RecurrenceCoefficients<K>&, std::size_t);                \
    template AuxTables<K> aux_tables(const RecurrenceCoefficients<K>&, std::size_t, AuxFill);            \
    template ClosedFormReport verify_closed_forms(const RecurrenceCoefficients<K>&, std::size_t, double); \
    template MomentSequence<K> moments_from_recurrence(const RecurrenceCoefficients<K>&, std::size_t,    \
                                                       std::string);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat
