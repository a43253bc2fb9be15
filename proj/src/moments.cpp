#include "orthomat/moments.hpp"

#include <cmath>
#include <numeric>

#include "orthomat/qkernel.hpp"
#include "orthomat/recurrence.hpp"

namespace orthomat {

namespace {

template <class K>
bool is_one(const K& v)
{
    if constexpr (is_exact_v<K>) {
        return v == K(1);
    } else {
        return approx_equal(v, K(1), 1e-12);
    }
}

Rational catalog_even_moment(Family family, std::size_t k)
{
    switch (family) {
    case Family::Gaussian: {
        mpz_class v = 1;
        for (std::size_t i = 1; i < 2 * k; i += 2) v *= static_cast<unsigned long>(i);
        return Rational(v);
    }
    case Family::Uniform:
        return Rational(1, static_cast<unsigned long>(2 * k + 1));
    case Family::Semicircle: {
        // Catalan C_k / 4^k
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * k, k);
        mpz_class four_k = 1;
        four_k <<= static_cast<mp_bitcnt_t>(2 * k);
        Rational r(c, four_k * (k + 1));
        r.canonicalize();
        return r;
    }
    case Family::Chebyshev1: {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * k, k);
        mpz_class four_k = 1;
        four_k <<= static_cast<mp_bitcnt_t>(2 * k);
        Rational r(c, four_k);
        r.canonicalize();
        return r;
    }
    case Family::QuadraticWeight: {
        Rational r = Rational(3, 4) * (Rational(1, static_cast<unsigned long>(2 * k + 1)) +
                                       Rational(1, static_cast<unsigned long>(2 * k + 3)));
        r.canonicalize();
        return r;
    }
    default:
        break;
    }
    throw InputError("family '" + family_id(family) + "' has no closed-form moments");
}

// Natural log of a positive value, safe for rationals far outside double range.
double log_positive(const Rational& x)
{
    long en = 0;
    long ed = 0;
    const double fn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
    const double fd = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
    return std::log(fn) - std::log(fd) + static_cast<double>(en - ed) * std::log(2.0);
}

double log_positive(double x) { return std::log(x); }
double log_positive(const Wide& x) { return static_cast<double>(boost::multiprecision::log(x)); }

}  // namespace

template <class K>
MomentSequence<K>::MomentSequence(std::vector<K> values, std::string label)
    : values_(std::move(values)), label_(std::move(label))
{
    if (values_.empty()) {
        throw InputError("moment sequence is empty");
    }
    if (!is_one(values_[0])) {
        throw InputError("moments not normalized: m_0 = " + format_value(values_[0]));
    }
}

template <class K>
const K& MomentSequence<K>::operator[](std::size_t k) const
{
    if (k >= values_.size()) {
        throw PreconditionError("moment m_" + std::to_string(k) + " not available (have m_0..m_" +
                                std::to_string(max_index()) + ")");
    }
    return values_[k];
}

template <class K>
bool MomentSequence<K>::symmetric() const
{
    for (std::size_t k = 1; k < values_.size(); k += 2) {
        if (!(values_[k] == K(0))) return false;
    }
    return true;
}

template <class K>
MomentSequence<K> MomentSequence<K>::prefix(std::size_t count) const
{
    if (count == 0 || count > values_.size()) {
        throw PreconditionError("prefix: requested " + std::to_string(count) + " moments, have " +
                                std::to_string(values_.size()));
    }
    return MomentSequence(std::vector<K>(values_.begin(), values_.begin() + count), label_);
}

Family parse_family(const std::string& id)
{
    if (id == "explicit") return Family::Explicit;
    if (id == "gaussian") return Family::Gaussian;
    if (id == "uniform") return Family::Uniform;
    if (id == "semicircle") return Family::Semicircle;
    if (id == "chebyshev1") return Family::Chebyshev1;
    if (id == "from-recurrence") return Family::FromRecurrence;
    if (id == "q-hermite") return Family::QHermite;
    if (id == "quadratic-weight") return Family::QuadraticWeight;
    throw InputError("unknown family '" + id + "'");
}

std::string family_id(Family f)
{
    switch (f) {
    case Family::Explicit: return "explicit";
    case Family::Gaussian: return "gaussian";
    case Family::Uniform: return "uniform";
    case Family::Semicircle: return "semicircle";
    case Family::Chebyshev1: return "chebyshev1";
    case Family::FromRecurrence: return "from-recurrence";
    case Family::QHermite: return "q-hermite";
    case Family::QuadraticWeight: return "quadratic-weight";
    }
    return "explicit";
}

template <class K>
MomentSequence<K> catalog_moments(Family family, std::size_t count)
{
    if (count == 0) throw InputError("moment count must be >= 1");
    std::vector<K> m(count, K(0));
    for (std::size_t k = 0; 2 * k < count; ++k) {
        m[2 * k] = FieldTraits<K>::from_rational(catalog_even_moment(family, k));
    }
    return MomentSequence<K>(std::move(m), family_id(family));
}

template <class K>
MomentSequence<K> make_moments(const FamilySpec<K>& spec)
{
    const std::string label = spec.label.empty() ? family_id(spec.family) : spec.label;
    switch (spec.family) {
    case Family::Explicit:
        return MomentSequence<K>(spec.values, label);
    case Family::FromRecurrence:
        if (spec.count == 0) throw InputError("moment count must be >= 1");
        return moments_from_recurrence(spec.rec, spec.count, label);
    case Family::QHermite: {
        if (spec.count == 0) throw InputError("moment count must be >= 1");
        if (!(spec.q < K(1)) || !(spec.q > K(-1))) {
            throw InputError("q-hermite requires |q| < 1, got q = " + format_value(spec.q));
        }
        const RecurrenceCoefficients<K> rec = q_hermite_recurrence(spec.q, spec.count);
        return moments_from_recurrence(rec, spec.count, label);
    }
    default: {
        MomentSequence<K> m = catalog_moments<K>(spec.family, spec.count);
        return MomentSequence<K>(m.values(), label);
    }
    }
}

template <class K>
std::vector<K> leading_minors(const Matrix<K>& a)
{
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("leading_minors: matrix must be square");
    std::vector<K> minors;
    minors.reserve(n);
    if (n == 0) return minors;

    if constexpr (std::is_same_v<K, Rational>) {
        // Clear denominators: det_k(D A) = D^{k+1} det_k(A).
        mpz_class lcm = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
        Matrix<mpz_class> w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational v = a(i, j) * lcm;
                w(i, j) = v.get_num();
            }
        // Fraction-free elimination without pivoting: after k steps, w(k,k) is the
        // leading minor of order k+1.
        mpz_class prev = 1;
        Rational scale(lcm);
        std::size_t k = 0;
        for (; k < n; ++k) {
            minors.push_back(Rational(w(k, k)) / scale);
            if (w(k, k) == 0) break;
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    mpz_class t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                    mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
            }
            prev = w(k, k);
            scale *= lcm;
        }
        // A zero pivot stops the no-pivot pass; remaining minors directly.
        for (std::size_t j = k + 1; j < n; ++j) {
            Matrix<Rational> block(j + 1, j + 1);
            for (std::size_t r = 0; r <= j; ++r)
                for (std::size_t c = 0; c <= j; ++c) block(r, c) = a(r, c);
            minors.push_back(bareiss_determinant(block));
        }
        return minors;
    } else {
        Matrix<K> w = a;
        K prod(1);
        std::size_t k = 0;
        for (; k < n; ++k) {
            if (w(k, k) == K(0)) {
                minors.push_back(K(0));
                break;
            }
            prod *= w(k, k);
            minors.push_back(prod);
            for (std::size_t i = k + 1; i < n; ++i) {
                const K f = w(i, k) / w(k, k);
                for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * w(k, j);
            }
        }
        // Fallback: partial-pivot LU on each remaining leading block.
        for (std::size_t j = k + 1; j < n; ++j) {
            Matrix<K> b(j + 1, j + 1);
            for (std::size_t r = 0; r <= j; ++r)
                for (std::size_t c = 0; c <= j; ++c) b(r, c) = a(r, c);
            K det(1);
            for (std::size_t c = 0; c <= j; ++c) {
                using std::abs;
                using boost::multiprecision::abs;
                std::size_t p = c;
                for (std::size_t r = c + 1; r <= j; ++r)
                    if (abs(b(r, c)) > abs(b(p, c))) p = r;
                if (b(p, c) == K(0)) {
                    det = K(0);
                    break;
                }
                if (p != c) {
                    for (std::size_t cc = 0; cc <= j; ++cc) std::swap(b(p, cc), b(c, cc));
                    det = -det;
                }
                det *= b(c, c);
                for (std::size_t r = c + 1; r <= j; ++r) {
                    const K f = b(r, c) / b(c, c);
                    for (std::size_t cc = c + 1; cc <= j; ++cc) b(r, cc) -= f * b(c, cc);
                }
            }
            minors.push_back(det);
        }
        return minors;
    }
}

Rational bareiss_determinant(const Matrix<Rational>& a)
{
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("bareiss_determinant: matrix must be square");
    if (n == 0) return Rational(1);
    mpz_class lcm = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
    Matrix<mpz_class> w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = a(i, j) * lcm;
            w(i, j) = v.get_num();
        }
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0) ++p;
            if (p == n) return Rational(0);
            for (std::size_t c = 0; c < n; ++c) std::swap(w(k, c), w(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = w(k, k);
    }
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(n));
    Rational det(w(n - 1, n - 1) * sign, scale);
    det.canonicalize();
    return det;
}

template <class K>
HankelMoments<K> hankel_matrix(const MomentSequence<K>& m, std::size_t n)
{
    if (2 * n > m.max_index()) {
        throw PreconditionError("hankel_matrix: order " + std::to_string(n) + " needs m_0..m_" +
                                std::to_string(2 * n) + ", have m_0..m_" + std::to_string(m.max_index()));
    }
    HankelMoments<K> h;
    h.order = n;
    h.entries = Matrix<K>(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) h.entries(i, j) = m[i + j];
    h.deltas = leading_minors(h.entries);
    return h;
}

template <class K>
CarlemanReport carleman_diagnostic(const MomentSequence<K>& m)
{
    CarlemanReport report;
    double sum = 0.0;
    for (std::size_t n = 1; 2 * n <= m.max_index(); ++n) {
        const K& v = m[2 * n];
        if (!(v > K(0))) {
            throw PreconditionError("carleman_diagnostic: even moment m_" + std::to_string(2 * n) +
                                    " is not positive");
        }
        sum += std::exp(-log_positive(v) / static_cast<double>(2 * n));
        report.partial_sums.push_back(sum);
    }
    report.caveat =
        "Divergence of sum m_{2n}^{-1/(2n)} implies a determinate moment problem. "
        "These are partial sums of a finite truncation and decide nothing on their own.";
    return report;
}

#define ORTHOMAT_INSTANTIATE(K)                                                         \
    template class MomentSequence<K>;                                                   \
    template MomentSequence<K> catalog_moments<K>(Family, std::size_t);                 \
    template MomentSequence<K> make_moments(const FamilySpec<K>&);                      \
    template std::vector<K> leading_minors(const Matrix<K>&);                           \
    template HankelMoments<K> hankel_matrix(const MomentSequence<K>&, std::size_t);     \
    template CarlemanReport carleman_diagnostic(const MomentSequence<K>&);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat
