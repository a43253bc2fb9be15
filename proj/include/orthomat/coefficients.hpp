#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "orthomat/errors.hpp"
#include "orthomat/scalar.hpp"

namespace orthomat {

/// Coefficients of x p_n = a_{n+1} p_{n+1} + b_n p_n + a_n p_{n-1}.
///
/// Stored as squares a_n^2 (exact in rational mode) with a_0^2 = 0, and b_n.
/// a2 holds a_0^2..a_N^2, b holds b_0..b_{M}; the two lengths are independent
/// because extraction from a moment matrix of order n yields a_1..a_n but only
/// b_0..b_{n-1}.
template <class K>
class RecurrenceCoefficients {
public:
    RecurrenceCoefficients() : a2_{K(0)} {}

    /// `a2_from_one` lists a_1^2, a_2^2, ...; every entry must be positive.
    RecurrenceCoefficients(std::vector<K> a2_from_one, std::vector<K> b) : b_(std::move(b))
    {
        a2_.reserve(a2_from_one.size() + 1);
        a2_.push_back(K(0));
        for (std::size_t i = 0; i < a2_from_one.size(); ++i) {
            if (!(a2_from_one[i] > K(0))) {
                throw InputError("recurrence coefficient a_" + std::to_string(i + 1) +
                                 "^2 must be positive");
            }
            a2_.push_back(std::move(a2_from_one[i]));
        }
    }

    /// Highest n with a_n^2 available.
    std::size_t a_count() const { return a2_.size() - 1; }
    /// Number of available b_n (b_0..b_{count-1}).
    std::size_t b_count() const { return b_.size(); }

    const K& a2(std::size_t n) const
    {
        if (n >= a2_.size()) {
            throw PreconditionError("a_" + std::to_string(n) + " not available (have up to a_" +
                                    std::to_string(a_count()) + ")");
        }
        return a2_[n];
    }

    /// a_n = sqrt(a_n^2), a_0 = 0.
    Root<K> a(std::size_t n) const
    {
        if (n == 0) return Root<K>(0);
        return FieldTraits<K>::sqrt(a2(n));
    }

    const K& b(std::size_t n) const
    {
        if (n >= b_.size()) {
            throw PreconditionError("b_" + std::to_string(n) + " not available (have " +
                                    std::to_string(b_count()) + ")");
        }
        return b_[n];
    }

    /// a_1^2, a_2^2, ... (without the a_0 slot).
    std::vector<K> a2_from_one() const { return {a2_.begin() + 1, a2_.end()}; }
    const std::vector<K>& b_values() const { return b_; }

    /// Largest table order the eta/tau recursions can fill: needs
    /// a_1^2..a_{n-1}^2 and b_0..b_{n-1}.
    std::size_t max_table_order() const
    {
        return std::min(a_count() + 1, b_count());
    }

    bool symmetric() const
    {
        for (const auto& v : b_) {
            if (!(v == K(0))) return false;
        }
        return true;
    }

    friend bool operator==(const RecurrenceCoefficients& x, const RecurrenceCoefficients& y)
    {
        return x.a2_ == y.a2_ && x.b_ == y.b_;
    }

private:
    std::vector<K> a2_;
    std::vector<K> b_;
};

}  // namespace orthomat
