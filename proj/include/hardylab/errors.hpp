#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainMembershipError : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class FieldValidityError : public Error {
public:
    using Error::Error;
};

class MatrixValidityError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class CriterionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Raised when an iterative solver exhausts its budget.
class IterationLimitError : public Error {
public:
    IterationLimitError(const std::string& what, double best_residual, int iterations)
        : Error(what), best_residual_(best_residual), iterations_(iterations) {}

    double best_residual() const { return best_residual_; }
    int iterations() const { return iterations_; }

private:
    double best_residual_;
    int iterations_;
};

}  // namespace hardylab
