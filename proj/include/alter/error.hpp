#pragma once

#include <stdexcept>
#include <string>

namespace alter {

/// Malformed or inconsistent input (unknown ids, mismatched observer, bad
/// documents).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction reached a state its invariants rule out.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace alter
