#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qzeno {

/// Raised when an adaptive integration cannot reach the requested tolerance.
/// Carries the best estimate and the error achieved so callers can still
/// report something useful.
class QuadratureNonConvergence : public std::runtime_error {
public:
    QuadratureNonConvergence(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate_(best), achieved_error_(err) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

enum class ConfigErrorKind {
    NonPositiveEpsilon,
    NegativeDelta,
    NegativeCoupling,
    NonPositiveCutoff,
    NonPositiveOhmicity,
    BadBeta,
    BadTauRange,
    BadQuadratureSpec,
};

const char* to_string(ConfigErrorKind kind) noexcept;

struct ConfigError {
    ConfigErrorKind kind;
    std::string field;
    std::string message;
};

/// Thrown by the *_or_throw helpers; holds every violated invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ConfigError> errors);
    const std::vector<ConfigError>& errors() const noexcept { return errors_; }

private:
    std::vector<ConfigError> errors_;
};

/// Config text could not be parsed. Line numbers are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class UnknownKey : public ParseError {
public:
    UnknownKey(int line, const std::string& key)
        : ParseError(line, "unknown key '" + key + "'"), key_(key) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Not enough valid neighbouring samples to estimate a slope.
class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qzeno
