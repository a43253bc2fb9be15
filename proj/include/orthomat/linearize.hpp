#pragma once

// Linearization coefficients: p_n p_m = sum_{s=0}^{n+m} c(n,m,s) p_s.

#include <cstddef>
#include <vector>

#include "orthomat/connect.hpp"
#include "orthomat/polysys.hpp"

namespace orthomat {

template <class T>
struct LinearizationTable {
    std::size_t n = 0;
    std::size_t m = 0;
    Basis basis = Basis::Orthonormal;
    /// c[s], s = 0..n+m.
    std::vector<T> c;
};

/// c(n,m,s) = sum_{j<=n, k<=m, j+k>=s} pi(n,j) pi(m,k) lambda(j+k,s).
/// Needs a system of order >= n+m.
template <class K>
LinearizationTable<Root<K>> linearization_table(const PolynomialSystem<K>& sys, std::size_t n, std::size_t m);

/// Monic variant with (pi, lambda) replaced by (eta, tau).
template <class K>
LinearizationTable<K> monic_linearization_table(const PolynomialSystem<K>& sys, std::size_t n, std::size_t m);

enum class LinearizationForm {
    /// The closed forms as stated.
    Statement,
    /// The expressions reached at the end of their derivation.
    ProofExpansion,
};

/// Closed forms for the monic c~(n,m,s) with s = n+m-1 or s = n+m-2, with
/// M = max(n,m), m' = min(n,m), B_k = b_0 + .. + b_{k-1}:
///
///   Statement, s = n+m-1:  sum_{j=M}^{n+m-1} (b_j - b_{j-M})
///   Statement, s = n+m-2:  sum_{j=M}^{n+m-1} a_j^2 - sum_{j=1}^{m'-1} a_j^2
///                          - (1/2) (sum_{j=M}^{n+m-2} b_j - sum_{j=0}^{m'-1} b_j)^2
///                          - (1/2) (sum_{j=M}^{n+m-2} b_j^2 - sum_{j=0}^{m'-1} b_j^2)
///   Proof,     s = n+m-1:  B_{n+m} - B_n - B_m
///   Proof,     s = n+m-2:  sum_{k=1}^{n+m-1} a_k^2 - sum_{k=1}^{n-1} a_k^2 - sum_{k=1}^{m-1} a_k^2
///                          - (B_n + B_m) B_{n+m-1} + B_n B_m
///
/// Other s throw PreconditionError.
template <class K>
K closed_form_linearization(const RecurrenceCoefficients<K>& rec, std::size_t n, std::size_t m, std::size_t s,
                            LinearizationForm form);

}  // namespace orthomat
