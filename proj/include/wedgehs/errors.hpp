#pragma once

#include <stdexcept>
#include <string>

namespace wedgehs {

/// Base class for every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
    explicit division_by_zero(const std::string& what) : error(what) {}
};

struct context_mismatch : error {
    using error::error;
};

struct dimension_mismatch : error {
    using error::error;
};

struct rank_out_of_range : error {
    using error::error;
};

/// Leading coefficient of a series is not invertible.
struct singular_leading_term : error {
    using error::error;
};

/// A truncation order below the minimum an operation needs.
struct order_too_small : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

} // namespace wedgehs
