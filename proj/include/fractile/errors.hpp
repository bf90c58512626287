#pragma once

#include <stdexcept>

namespace fractile {

// Thrown when an operation would exceed a configured size limit.
struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal cross-check fails; indicates a bug, not bad input.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace fractile
