#pragma once

#include <stdexcept>
#include <string>

namespace alcove {

// Raised when a requested computation would exceed a configured size bound
// (weight-system size, tensor-power support, matrix dimensions).  Callers can
// retry with a larger budget; the CLI maps this to exit code 3.
struct bound_exceeded : std::runtime_error {
    explicit bound_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal identity that must hold exactly fails (non-integer
// Freudenthal division, negative fused multiplicity, row sum off unity).
// Always a bug signal; the CLI maps this to exit code 4.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace alcove
