#pragma once

#include <stdexcept>

namespace superloop {

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computed object failed a property it must have by construction.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace superloop
