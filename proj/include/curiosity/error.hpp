#pragma once

#include <stdexcept>
#include <string>

namespace curiosity {

// Bad construction arguments (sizes, unknown method names, malformed flags).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Vector/matrix dimension mismatch at a call site.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented precondition was violated by the caller.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Non-finite value encountered; the owning run must abort.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace curiosity
