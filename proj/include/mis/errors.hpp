#pragma once

#include <stdexcept>
#include <string>

namespace mis {

// Bad user-supplied parameters (CLI maps these to exit code 2).
struct InvalidSpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data violates a precondition (out-of-range ids, dependent set, ...).
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A guarded resource limit was hit (enumeration size, variant table, ...).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An estimate cannot be formed (e.g. success probability of zero).
struct CensoredError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mis
