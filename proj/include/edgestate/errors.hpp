#pragma once

#include <stdexcept>
#include <string>

namespace edgestate {

// Malformed input: bad matrix shape, bad file contents, inconsistent sizes.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A node regression cannot be fitted (collinear parents or a perfectly
// predicted node).
class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Edge constraints leave no way to satisfy a request (empty allowed set, or a
// directed cycle whose edges are all pinned).
class UnsatisfiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration or repair loop hit its configured size limit.
class GuardExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace edgestate
