#pragma once

#include <stdexcept>
#include <string>

namespace quadrop {

/// Dimension or index disagreement between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (expressions, files, fixtures).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configured resource bound (ambient dimension, degree) was exceeded.
struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Request outside the defined domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Cooperative cancellation of a long-running computation.
struct Cancelled : std::runtime_error {
    Cancelled() : std::runtime_error("computation cancelled") {}
};

} // namespace quadrop
