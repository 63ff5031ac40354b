#pragma once

#include <stdexcept>
#include <string>

namespace shiftres {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or precondition violation (bad dimensions, bad ranges,
/// unknown config keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical integration produced a non-finite state.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& msg, long step_index)
        : Error(msg), step(step_index) {}

    long step;
};

/// A time-shift lookup fell outside the recorded trajectory window.
class BufferError : public Error {
public:
    using Error::Error;
};

/// A linear solve or statistic is undefined (non-finite result, zero variance).
class NumericError : public Error {
public:
    using Error::Error;
};

/// File read/write failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace shiftres
