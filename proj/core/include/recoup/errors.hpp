#pragma once

#include <stdexcept>
#include <string>

namespace recoup {

/// Bad caller input: out-of-range vertices, mismatched vertex sets, invalid flags.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed file content; carries whatever location context the parser had.
class ParseError : public InputError {
public:
    explicit ParseError(const std::string& what) : InputError(what) {}
};

/// An action whose precondition does not hold in the given state.
class ActionError : public InputError {
public:
    explicit ActionError(const std::string& what) : InputError(what) {}
};

/// Broken internal invariant (e.g. a cyclic parent chain in search bookkeeping).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace recoup
