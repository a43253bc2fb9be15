#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "orthomat/scalar.hpp"

namespace orthomat {

/// Dense row-major matrix. Only what the moment-matrix calculus needs.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class A, class B>
auto multiply(const Matrix<A>& a, const Matrix<B>& b)
{
    using R = product_t<A, B>;
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: shape mismatch");
    }
    Matrix<R> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            R acc(0);
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

enum class TableRole { L, Pi, Lambda, Eta, Tau, XiZeta, Other };

std::string to_string(TableRole role);

/// Lower-triangular coefficient array t(i,j), 0 <= j <= i <= order, packed by rows.
/// Reads above the diagonal return zero; writes there are rejected.
template <class T>
class TriangularTable {
public:
    TriangularTable() = default;
    TriangularTable(std::size_t order, TableRole role)
        : order_(order), role_(role), data_((order + 1) * (order + 2) / 2, T(0))
    {
    }

    std::size_t order() const { return order_; }
    std::size_t size() const { return order_ + 1; }
    TableRole role() const { return role_; }
    void set_role(TableRole role) { role_ = role; }

    const T& operator()(std::size_t i, std::size_t j) const
    {
        static const T zero(0);
        if (j > i) return zero;
        return data_[index(i, j)];
    }

    T& at(std::size_t i, std::size_t j)
    {
        if (j > i || i > order_) {
            throw std::out_of_range("TriangularTable: (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") outside lower triangle of order " +
                                    std::to_string(order_));
        }
        return data_[index(i, j)];
    }

    Matrix<T> dense() const
    {
        Matrix<T> m(size(), size());
        for (std::size_t i = 0; i <= order_; ++i)
            for (std::size_t j = 0; j <= i; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    static TriangularTable from_dense(const Matrix<T>& m, TableRole role)
    {
        if (m.rows() == 0 || m.rows() != m.cols()) {
            throw std::invalid_argument("TriangularTable::from_dense: matrix must be square");
        }
        TriangularTable t(m.rows() - 1, role);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j <= i; ++j) t.at(i, j) = m(i, j);
        return t;
    }

    /// Leading (k+1)x(k+1) block.
    TriangularTable leading(std::size_t k) const
    {
        if (k > order_) throw std::out_of_range("TriangularTable::leading");
        TriangularTable t(k, role_);
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = 0; j <= i; ++j) t.at(i, j) = (*this)(i, j);
        return t;
    }

    std::vector<T> row(std::size_t i) const
    {
        std::vector<T> r(i + 1);
        for (std::size_t j = 0; j <= i; ++j) r[j] = (*this)(i, j);
        return r;
    }

    friend bool operator==(const TriangularTable& a, const TriangularTable& b)
    {
        return a.order_ == b.order_ && a.data_ == b.data_;
    }

private:
    static std::size_t index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }

    std::size_t order_ = 0;
    TableRole role_ = TableRole::Other;
    std::vector<T> data_{T(0)};
};

/// Product of two lower-triangular tables (lower-triangular again).
template <class A, class B>
auto multiply(const TriangularTable<A>& a, const TriangularTable<B>& b, TableRole role = TableRole::Other)
{
    using R = product_t<A, B>;
    if (a.order() != b.order()) {
        throw std::invalid_argument("multiply: table orders differ");
    }
    TriangularTable<R> out(a.order(), role);
    for (std::size_t i = 0; i <= a.order(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            R acc(0);
            for (std::size_t k = j; k <= i; ++k) acc += a(i, k) * b(k, j);
            out.at(i, j) = acc;
        }
    }
    return out;
}

}  // namespace orthomat
