#pragma once

#include <stdexcept>
#include <string>

namespace irt {

/// Invalid parameters or configuration supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data (files, frames, masks).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation that has no defined numeric result for its input.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace irt
