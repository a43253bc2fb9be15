#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orthomat/coefficients.hpp"
#include "orthomat/errors.hpp"
#include "orthomat/matrix.hpp"
#include "orthomat/scalar.hpp"

namespace orthomat {

/// Moments m_0..m_N of a normalized measure (m_0 = 1).
template <class K>
class MomentSequence {
public:
    MomentSequence(std::vector<K> values, std::string label);

    std::size_t size() const { return values_.size(); }
    /// N, the highest available moment index.
    std::size_t max_index() const { return values_.size() - 1; }
    /// Largest n with m_0..m_{2n} available.
    std::size_t max_order() const { return max_index() / 2; }

    const K& operator[](std::size_t k) const;
    const std::vector<K>& values() const { return values_; }
    const std::string& label() const { return label_; }

    /// All odd moments vanish.
    bool symmetric() const;

    /// First `count` moments.
    MomentSequence prefix(std::size_t count) const;

private:
    std::vector<K> values_;
    std::string label_;
};

/// Moment matrix M_n = [m_{i+j}] and its leading principal minors.
template <class K>
struct HankelMoments {
    std::size_t order = 0;
    Matrix<K> entries;
    /// Delta_0..Delta_n; Delta_k = det M_k.
    std::vector<K> deltas;
};

enum class Family {
    Explicit,
    Gaussian,
    Uniform,
    Semicircle,
    Chebyshev1,
    FromRecurrence,
    QHermite,
    QuadraticWeight,
};

Family parse_family(const std::string& id);
std::string family_id(Family f);

/// Test-measure catalog entry.
///
///   gaussian          N(0,1): m_2k = (2k-1)!!
///   uniform           dx/2 on [-1,1]: m_2k = 1/(2k+1)
///   semicircle        (2/pi) sqrt(1-x^2) on [-1,1]: m_2k = C_k / 4^k
///   chebyshev1        dx/(pi sqrt(1-x^2)) on [-1,1]: m_2k = binom(2k,k) / 4^k
///   quadratic-weight  (3/8)(1+x^2) on [-1,1]
///   q-hermite         a_n^2 = [n]_q, b = 0, |q| < 1
///   from-recurrence   moments of the given {a_n^2, b_n}
template <class K>
struct FamilySpec {
    Family family = Family::Explicit;
    std::size_t count = 1;
    K q = K(0);
    std::vector<K> values;           // explicit
    RecurrenceCoefficients<K> rec;   // from-recurrence
    std::string label;
};

template <class K>
MomentSequence<K> make_moments(const FamilySpec<K>& spec);

/// Catalog shortcut: moments m_0..m_{count-1} of a parameter-free family.
template <class K>
MomentSequence<K> catalog_moments(Family family, std::size_t count);

/// Requires m_0..m_{2n}. Deltas by fraction-free elimination (rational mode) or
/// by the product of elimination pivots, i.e. prod l_kk^2 (float mode).
template <class K>
HankelMoments<K> hankel_matrix(const MomentSequence<K>& m, std::size_t n);

/// det of every leading principal block of a square matrix.
template <class K>
std::vector<K> leading_minors(const Matrix<K>& a);

/// Determinant by fraction-free Bareiss elimination with row pivoting on the
/// integer matrix obtained by clearing denominators.
Rational bareiss_determinant(const Matrix<Rational>& a);

struct CarlemanReport {
    /// partial_sums[k-1] = sum_{n=1}^{k} m_{2n}^{-1/(2n)}
    std::vector<double> partial_sums;
    std::string caveat;
};

/// Partial sums of the Carleman series sum m_{2n}^{-1/(2n)}. Divergence of the
/// full series implies determinacy; a finite truncation decides nothing.
template <class K>
CarlemanReport carleman_diagnostic(const MomentSequence<K>& m);

}  // namespace orthomat
