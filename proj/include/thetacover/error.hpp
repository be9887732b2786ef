#pragma once

#include <stdexcept>
#include <string>

namespace thetacover {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Evaluation requested too close to a zero/pole of a meromorphic quantity.
class PoleProximity : public Error {
public:
    using Error::Error;
};

// A map was requested for a divisor that fails validation.
class ConstructionError : public Error {
public:
    using Error::Error;
};

class CompletionFailure : public Error {
public:
    using Error::Error;
};

class GenerationExhausted : public Error {
public:
    using Error::Error;
};

// Iterative numerics (root finding) did not converge.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class ContourTooClose : public Error {
public:
    using Error::Error;
};

} // namespace thetacover
