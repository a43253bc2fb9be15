#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthomat {

/// Malformed input: bad file, bad literal, unknown family, invalid parameter.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (too few moments, order mismatch, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cholesky pivot at `order` is not positive: the sequence is not the
/// truncation of a moment sequence of a measure with infinite support.
class NotPositiveDefinite : public PreconditionError {
public:
    explicit NotPositiveDefinite(std::size_t order)
        : PreconditionError("moment matrix not positive definite at order " + std::to_string(order)),
          order_(order)
    {
    }

    std::size_t order() const { return order_; }

private:
    std::size_t order_;
};

}  // namespace orthomat
