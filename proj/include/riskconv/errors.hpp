#pragma once

#include <stdexcept>
#include <string>

namespace riskconv {

// Bad parameters or malformed input data.
class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Objects that cannot be combined: mismatched spaces, allocations that do
// not sum to their target, rosters misaligned with a weight scheme.
class structural_error : public std::runtime_error {
public:
    explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// A routine was asked to handle a measure kind outside its contract
// (e.g. VaR in a convex-only path) or a size cap was exceeded.
class unsupported_operation : public std::runtime_error {
public:
    explicit unsupported_operation(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition of an allocation or arbitrage routine failed
// (non-equiprobable space, insufficient support cardinality, ...).
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A solver failed to converge or produced an inconsistent certificate.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace riskconv
