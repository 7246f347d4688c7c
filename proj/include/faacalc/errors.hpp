#ifndef FAACALC_ERRORS_HPP
#define FAACALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace faacalc {

// Caller passed structurally invalid data: mismatched dimensions, missing
// table entries, malformed serializations. CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input was well-formed but lies outside the mathematical domain of the
// operation: singular Jacobians, vanishing leading series coefficients.
// CLI maps this to exit code 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace faacalc

#endif
