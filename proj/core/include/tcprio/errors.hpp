#pragma once

#include <stdexcept>
#include <string>

namespace tcprio {

/// Raised for malformed or inconsistent user input (files, flags, matrices
/// that violate their documented format). Maps to CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal invariant is violated. Maps to CLI exit code 2.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool cond, const char* msg) {
    if (!cond) {
        throw InternalError(msg);
    }
}

}  // namespace tcprio
