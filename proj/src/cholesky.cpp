#include "orthomat/cholesky.hpp"

namespace orthomat {

template <class K>
TriangularTable<Root<K>> cholesky_decompose(const Matrix<K>& m, double pivot_tol)
{
    using R = Root<K>;
    using F = FieldTraits<K>;
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw PreconditionError("cholesky_decompose: matrix must be square and nonempty");
    }
    const std::size_t n = m.rows() - 1;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!(m(i, j) == m(j, i))) throw PreconditionError("cholesky_decompose: matrix is not symmetric");

    TriangularTable<R> l(n, TableRole::L);
    for (std::size_t r = 0; r <= n; ++r) {
        for (std::size_t k = 0; k < r; ++k) {
            R acc(m(r, k));
            for (std::size_t j = 0; j < k; ++j) acc -= l(r, j) * l(k, j);
            l.at(r, k) = acc / l(k, k);
        }
        K pivot = m(r, r);
        for (std::size_t j = 0; j < r; ++j) pivot -= F::root_square(l(r, j));
        bool ok = pivot > K(0);
        if constexpr (!is_exact_v<K>) ok = ok && pivot > K(pivot_tol) * m(r, r);
        if (!ok) throw NotPositiveDefinite(r);
        l.at(r, r) = F::sqrt(pivot);
    }
    return l;
}

template <class T>
TriangularTable<T> invert_lower_triangular(const TriangularTable<T>& t, TableRole role)
{
    const std::size_t n = t.order();
    TriangularTable<T> x(n, role);
    for (std::size_t i = 0; i <= n; ++i) {
        if (t(i, i) == T(0)) {
            throw PreconditionError("invert_lower_triangular: zero diagonal entry at " + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i <= n; ++i) {
        x.at(i, i) = T(1) / t(i, i);
        for (std::size_t j = 0; j < i; ++j) {
            T acc(0);
            for (std::size_t k = j; k < i; ++k) acc += t(i, k) * x(k, j);
            x.at(i, j) = -acc / t(i, i);
        }
    }
    return x;
}

template TriangularTable<double> cholesky_decompose(const Matrix<double>&, double);
template TriangularTable<Wide> cholesky_decompose(const Matrix<Wide>&, double);
template TriangularTable<Surd> cholesky_decompose(const Matrix<Rational>&, double);

template TriangularTable<double> invert_lower_triangular(const TriangularTable<double>&, TableRole);
template TriangularTable<Wide> invert_lower_triangular(const TriangularTable<Wide>&, TableRole);
template TriangularTable<Rational> invert_lower_triangular(const TriangularTable<Rational>&, TableRole);
template TriangularTable<Surd> invert_lower_triangular(const TriangularTable<Surd>&, TableRole);

}  // namespace orthomat
