#pragma once

#include <stdexcept>
#include <string>

namespace lrk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Invalid or unsupported model/run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// A mode with vanishing energy where an angle or vacuum is required.
class GaplessError : public Error {
public:
    using Error::Error;
};

// Parameters sit on (or numerically at) a critical point.
class CriticalPointError : public Error {
public:
    using Error::Error;
};

// Series, quadrature or refinement that failed to reach tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Internal consistency check failed (eigenvalue range, trace, conditioning).
class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lrk
