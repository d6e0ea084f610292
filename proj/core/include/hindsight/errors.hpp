#pragma once

#include <stdexcept>
#include <string>

namespace hindsight {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data (CSV/JSON syntax, bad field values); message names the location.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value or combination of values outside the supported domain
/// (bad configuration, violated preconditions, incompatible inputs).
class DomainError : public Error {
public:
    using Error::Error;
};

/// No admissible trajectory exists under the requested constraints.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (unreadable/unwritable file).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace hindsight
