#pragma once

#include <stdexcept>
#include <string>

namespace besov {

// Invalid argument or violated construction precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Point outside the domain of a closed-form function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class MonotonicityError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Hypothesis of a construction not met (e.g. a weight series that converges).
class PreconditionError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Shift or box not representable on the grid.
class AlignmentError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Requested scales are finer than the grid can resolve.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace besov
