#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plurilab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments: wrong counts, invalid geometry parameters, NaN weights.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Integer overflow in the combinatorial counts.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A Gram system or measure does not determine a basis of the polynomial space.
class DegenerateError : public Error {
public:
    DegenerateError(const std::string& what, std::size_t numerical_rank, std::size_t dimension)
        : Error(what), rank_(numerical_rank), dim_(dimension) {}

    std::size_t numerical_rank() const noexcept { return rank_; }
    std::size_t dimension() const noexcept { return dim_; }

private:
    std::size_t rank_;
    std::size_t dim_;
};

/// Operation requested on an unsupported model combination.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace plurilab
