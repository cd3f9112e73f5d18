#ifndef QWALK_ERRORS_HPP
#define QWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwalk {

// Input file could not be read or decoded.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input decoded fine but violates a structural invariant
// (disconnected graph, broken involution, bad edge indices, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller violated an operation precondition.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numeric routine could not meet its accuracy contract.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Brute-force oracle invoked beyond its size limits.
struct SizeError : std::invalid_argument {
    explicit SizeError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace qwalk

#endif
