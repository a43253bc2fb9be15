#pragma once

// Orthonormal polynomial system of a measure given by its moments:
// Pi = L^{-1} holds the coefficients of p_0..p_n in monomials, Lambda = L the
// coefficients of 1, x, .., x^n in p_0..p_n.

#include <cstddef>
#include <string>
#include <vector>

#include "orthomat/cholesky.hpp"
#include "orthomat/coefficients.hpp"
#include "orthomat/matrix.hpp"
#include "orthomat/moments.hpp"

namespace orthomat {

template <class K>
struct PolynomialSystem {
    using R = Root<K>;

    MomentSequence<K> moments;
    std::size_t order = 0;
    HankelMoments<K> hankel;
    TriangularTable<R> L;
    TriangularTable<R> Pi;
    TriangularTable<R> Lambda;
    /// Monic tables: eta(n,i) = pi(n,i)/pi(n,n), tau(n,i) = lambda(n,i)/lambda(i,i).
    TriangularTable<K> eta;
    TriangularTable<K> tau;
    /// a_1..a_n and b_0..b_{n-1}.
    RecurrenceCoefficients<K> rec;
};

/// Needs m_0..m_{2n}. Propagates NotPositiveDefinite from the decomposition.
template <class K>
PolynomialSystem<K> build_system(const MomentSequence<K>& m, std::size_t n, double pivot_tol = FieldTraits<K>::pivot_tol);

/// a_n = pi(n-1,n-1)/pi(n,n),  b_n = pi(n,n-1)/pi(n,n) - pi(n+1,n)/pi(n+1,n+1).
template <class K>
RecurrenceCoefficients<K> recurrence_from_tables(const PolynomialSystem<K>& sys);

/// Cross-check: a_n^2 = Delta_n Delta_{n-2} / Delta_{n-1}^2 and
/// b_n = l(n+1,n)/l(n,n) - l(n,n-1)/l(n-1,n-1).
template <class K>
RecurrenceCoefficients<K> recurrence_from_determinants(const PolynomialSystem<K>& sys);

/// p_k(x) by the forward three-term recurrence.
template <class K>
Root<K> eval_poly(const PolynomialSystem<K>& sys, std::size_t k, const K& x);

/// Monic p~_k(x) by the forward recurrence p~_{j+1} = (x - b_j) p~_j - a_j^2 p~_{j-1}.
template <class K>
K eval_monic(const PolynomialSystem<K>& sys, std::size_t k, const K& x);

/// sum_i pi(k,i) x^i.
template <class K>
Root<K> eval_from_table(const PolynomialSystem<K>& sys, std::size_t k, const K& x);

/// Coefficients of the associated polynomials:
///   q_n(x) = sum_k x^k sum_{j=k+1}^{n} pi(n,j) m_{j-1-k},  q_0 = 0.
/// Row n has degree n-1; row 0 is zero.
template <class K>
TriangularTable<Root<K>> associated_polys(const PolynomialSystem<K>& sys);

/// q_k(x) by the recurrence x q_n = a_{n+1} q_{n+1} + b_n q_n + a_n q_{n-1}
/// started from q_0 = 0, q_1 = 1/a_1.
template <class K>
Root<K> eval_associated(const PolynomialSystem<K>& sys, std::size_t k, const K& x);

/// K_n(x,y) = sum_{i<=n} p_i(x) p_i(y).
template <class K>
K kernel(const PolynomialSystem<K>& sys, const K& x, const K& y);

/// X^T M_n^{-1} Y.
template <class K>
K kernel_via_inverse(const PolynomialSystem<K>& sys, const K& x, const K& y);

/// 1 / K_n(x,x).
template <class K>
K christoffel(const PolynomialSystem<K>& sys, const K& x);

/// M_n^{-1} = Pi^T Pi.
template <class K>
Matrix<K> inverse_moment_matrix(const PolynomialSystem<K>& sys);

/// One finite-n identity: both sides as doubles plus the verdict (exact in
/// rational mode).
struct DiagnosticLine {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    /// Reported only; never fails a run.
    bool informative = false;
};

template <class K>
struct SpectralDiagnostics {
    /// Eigenvalues of M_n ascending; empty in rational mode.
    std::vector<double> eigenvalues;
    /// max_j ||M v_j - xi_j v_j|| / ||M||.
    double eigen_residual = 0.0;
    /// M_n^{-1}.
    Matrix<K> inverse;
    std::vector<DiagnosticLine> lines;

    bool ok() const
    {
        for (const auto& l : lines)
            if (!l.informative && !l.pass) return false;
        return true;
    }
};

/// Trace, kernel and inverse-entry identities of the moment matrix. Kernel
/// bounds are evaluated at each of `points` (pairs (x_i, x_{i+1}) for the
/// off-diagonal bound); they need eigenvalues and are skipped in rational mode.
template <class K>
SpectralDiagnostics<K> diagnostics(const PolynomialSystem<K>& sys, const std::vector<double>& points = {},
                                   double tol = 1e-8);

}  // namespace orthomat
