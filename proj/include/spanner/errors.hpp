#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spanner {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad graph, bad parameters or an out-of-domain request.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnsupportedK : public InputError {
public:
    using InputError::InputError;
};

// Something would take more memory or time than the configured limit.
class ResourceError : public Error {
public:
    using Error::Error;
};

class BudgetViolation : public Error {
public:
    using Error::Error;
};

class RoutingAdmissibilityError : public Error {
public:
    RoutingAdmissibilityError(std::size_t vertex, const std::string& what)
        : Error(what), vertex_(vertex) {}
    std::size_t vertex() const { return vertex_; }

private:
    std::size_t vertex_;
};

class TimeoutError : public Error {
public:
    using Error::Error;
};

// Estimator parameters cannot give a guaranteed hitting set.
class ParameterError : public Error {
public:
    ParameterError(const std::string& what, double size_part, double miss_part)
        : Error(what), size_part_(size_part), miss_part_(miss_part) {}
    double size_part() const { return size_part_; }
    double miss_part() const { return miss_part_; }

private:
    double size_part_;
    double miss_part_;
};

class HittingFailure : public Error {
public:
    using Error::Error;
};

// An internal invariant of an algorithm did not hold.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace spanner
