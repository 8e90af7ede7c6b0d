#pragma once

#include <stdexcept>
#include <string>

namespace isr {

/// Malformed or inconsistent input (bad vertex ids, dependent sets, bad flags).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configurable enumeration or search cap was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace isr
