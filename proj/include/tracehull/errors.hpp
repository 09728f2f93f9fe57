#pragma once

#include <stdexcept>
#include <string>

namespace tracehull {

// Malformed or out-of-contract input (bad strings, dimension mismatches,
// empty regions, precision below the supported floor). CLI maps this to
// exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal solver failure (cycling guard tripped, Newton stuck). CLI maps
// this to exit code 3.
struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tracehull
