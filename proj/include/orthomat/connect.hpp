#pragma once

// Connection coefficients p_n(x, delta) = sum_k gamma(n,k) p_k(x, alpha), the
// ribbon structure of L^{-1}(alpha) M(delta) L^{-T}(alpha), and the Fourier
// expansion of d alpha / d delta in the delta-orthonormal polynomials.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orthomat/polysys.hpp"

namespace orthomat {

enum class Basis { Orthonormal, Monic };

std::string to_string(Basis b);
Basis parse_basis(const std::string& s);

template <class T>
struct ConnectionTable {
    std::size_t order = 0;
    Basis basis = Basis::Orthonormal;
    std::string target_label;
    std::string source_label;
    TriangularTable<T> gamma;
};

/// gamma(n,k) = sum_{j=k}^{n} pi(n,j; target) lambda(j,k; source), i.e. the
/// rows of Pi(target) L(source).
template <class K>
ConnectionTable<Root<K>> connection_table(const PolynomialSystem<K>& target, const PolynomialSystem<K>& source,
                                          std::size_t n);

/// Same with (pi, lambda) replaced by (eta, tau).
template <class K>
ConnectionTable<K> monic_connection_table(const PolynomialSystem<K>& target, const PolynomialSystem<K>& source,
                                          std::size_t n);

/// Closed forms of the monic connection coefficients gamma(n,k; target, source):
///   k = n     1
///   k = n-1   sum_{j=0}^{n-1} (b_j(source) - b_j(target))
///   k = n-2   sum_{j=1}^{n-1} (a_j^2(source) - a_j^2(target))
///             + (1/2) (sum_{j=0}^{n-2} (b_j(source) - b_j(target)))^2
///             + (1/2) sum_{j=0}^{n-2} (b_j^2(source) - b_j^2(target))
///             - b_{n-1}(target) sum_{j=0}^{n-2} (b_j(source) - b_j(target))
/// Other k throw PreconditionError.
template <class K>
K closed_form_gamma(const RecurrenceCoefficients<K>& target, const RecurrenceCoefficients<K>& source,
                    std::size_t n, std::size_t k);

template <class K>
struct RibbonReport {
    bool ribbon = true;
    /// Largest |entry| with |i-j| > r, and where it sits.
    double max_off_ribbon = 0.0;
    std::size_t worst_row = 0;
    std::size_t worst_col = 0;
    Matrix<Root<K>> matrix;
};

/// Forms L^{-1}(alpha) M_n(delta) L^{-T}(alpha) and tests that entries with
/// |i-j| > r vanish (exactly in rational mode, below tol * max|entry| in
/// float mode). Meaningful when d alpha/d delta = 1/Q_r for a polynomial Q_r of
/// degree r, which the caller has to guarantee.
template <class K>
RibbonReport<K> ribbon_check(const PolynomialSystem<K>& alpha, const MomentSequence<K>& delta, std::size_t r,
                             std::size_t n, double tol = 1e-10);

/// Uniform alpha and delta with density (3/8)(1 + x^2) on [-1,1]:
/// d alpha / d delta = 1 / ((3/4)(1 + x^2)), so r = 2.
template <class K>
struct RibbonPair {
    MomentSequence<K> alpha;
    MomentSequence<K> delta;
    std::size_t r = 2;
};

template <class K>
RibbonPair<K> builtin_ribbon_pair(std::size_t n);

template <class K>
struct RNExpansion {
    /// omega_j = E_alpha p_j(Z, delta) = sum_k pi(j,k; delta) m_k(alpha).
    std::vector<Root<K>> omega;
    /// parseval[k] = sum_{j<=k} omega_j^2.
    std::vector<K> parseval;
    /// sum_j omega_j^2 log^2(j+1) over the computed coefficients.
    double log_weighted_sum = 0.0;
    std::optional<double> integral;
    /// integral - parseval.back(); nonnegative by Bessel's inequality.
    std::optional<double> bessel_residual;
};

/// Needs alpha moments m_0..m_N and a delta system of order >= N.
template <class K>
RNExpansion<K> rn_expansion(const MomentSequence<K>& alpha, const PolynomialSystem<K>& delta, std::size_t N,
                            std::optional<double> integral = std::nullopt);

}  // namespace orthomat
