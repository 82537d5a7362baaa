#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace conifold {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// No coordinate chart with a denominator above the required margin.
class DegenerateChartError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature ran out of subdivisions before meeting its target.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double achieved_error)
        : Error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

// A metric positivity condition failed at the evaluation point.
class PositivityError : public Error {
public:
    using Error::Error;
};

// Inconsistent topology-change data. `equation()` names the violated relation.
class TransitionError : public Error {
public:
    TransitionError(std::string equation, const std::string& what)
        : Error(what), equation_(std::move(equation)) {}

    const std::string& equation() const noexcept { return equation_; }

private:
    std::string equation_;
};

// The point handed to an ODP check does not lie on the variety.
class NotOnVarietyError : public Error {
public:
    using Error::Error;
};

}  // namespace conifold
