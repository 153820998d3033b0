#pragma once

#include <stdexcept>
#include <string>

namespace bellscope {

// Bad input: shape mismatch, broken invariant, unknown name.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: eigensolver non-convergence, non-finite objective.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bellscope
