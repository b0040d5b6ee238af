#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace pomlab {

/// Raised when a value violates the invariants of its domain type (a density
/// operator with negative eigenvalues, a box that signals, an unknown name).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Full-precision text for a real, for use in error messages.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace pomlab
