#ifndef MEASUREGRAPH_ERRORS_HPP
#define MEASUREGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace measuregraph {

// Invalid parameters, malformed specs, unsupported combinations. CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature, root finding or coefficient extraction that failed to converge. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration or sampling exceeded a configured budget. CLI exit code 4.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

} // namespace measuregraph

#endif
