#pragma once

#include <stdexcept>
#include <string>

namespace mp {

// Invalid parameters or malformed input documents.  The CLI maps this to
// exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that could not reach its accuracy target (truncation bound
// unreachable, ill-conditioned solve, quadrature non-convergence).  The CLI
// maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mp
