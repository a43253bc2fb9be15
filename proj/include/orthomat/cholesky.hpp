#pragma once

#include "orthomat/errors.hpp"
#include "orthomat/matrix.hpp"
#include "orthomat/moments.hpp"

namespace orthomat {

/// M = L L^T, computed row by row:
///   l(n+1,k) = (m_{n+k+1} - sum_{j<k} l(n+1,j) l(k,j)) / l(k,k)
///   l(n,n)   = sqrt(m_{2n} - sum_{j<n} l(n,j)^2)
/// Throws NotPositiveDefinite{k} when the k-th pivot is <= 0 (exact mode) or
/// <= pivot_tol * m_{2k} (float mode; 1e-12 for double, 1e-80 for the wide backend).
template <class K>
TriangularTable<Root<K>> cholesky_decompose(const Matrix<K>& m, double pivot_tol = FieldTraits<K>::pivot_tol);

template <class K>
TriangularTable<Root<K>> cholesky_decompose(const HankelMoments<K>& m, double pivot_tol = FieldTraits<K>::pivot_tol)
{
    return cholesky_decompose(m.entries, pivot_tol);
}

/// Forward-substitution inverse of a lower-triangular table.
/// Throws PreconditionError on a zero diagonal entry.
template <class T>
TriangularTable<T> invert_lower_triangular(const TriangularTable<T>& t, TableRole role = TableRole::Other);

}  // namespace orthomat
