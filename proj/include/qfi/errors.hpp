// errors.hpp - exception types shared by every qfi module

#pragma once

#include <stdexcept>
#include <string>

namespace qfi {

// Argument outside the mathematical domain of a function (x <= 0 for f, alpha outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed input: wrong sizes, non-Hermitian matrices, bad truncation orders.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A quantity that has no finite value for the given input (zero denominators).
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedFamilyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Truncated Fock space too small for the requested Gibbs tail bound.
class CutoffError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid job configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qfi
