#pragma once

#include <stdexcept>
#include <string>

namespace sckn {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible open domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// |lambda| too small for the Gegenbauer normalization (p close to 6).
class DegenerateBasisError : public DomainError {
public:
    using DomainError::DomainError;
};

class RadicandError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// Assembled matrix failed its symmetry gate.
class BuildError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Bisection endpoints carry the same sign.
class BracketError : public Error {
public:
    using Error::Error;
};

}  // namespace sckn
