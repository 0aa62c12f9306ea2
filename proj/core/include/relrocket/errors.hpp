#pragma once

#include <stdexcept>
#include <string>

namespace relrocket {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An argument lies outside the mathematical domain of an operation
// (non-finite input, mass out of range, empty horizon, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// |v| at or beyond the guarded light-speed limit c*(1 - 1e-12).
class SpeedLimitError : public DomainError {
public:
    explicit SpeedLimitError(const std::string& msg) : DomainError(msg) {}
};

// A steering endpoint with |v| >= c: no admissible input reaches it.
class UnreachableError : public DomainError {
public:
    explicit UnreachableError(const std::string& msg) : DomainError(msg) {}
};

// Scenario configuration rejected (invariant violation, unknown key, ...).
// `field` names the offending config entry when known.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, std::string field = {})
        : Error(field.empty() ? msg : field + ": " + msg), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Malformed configuration document; message carries the parser location.
class ParseError : public ConfigError {
public:
    explicit ParseError(const std::string& msg) : ConfigError(msg) {}
};

// Filesystem failure; message carries the path.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace relrocket
