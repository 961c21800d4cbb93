#pragma once

#include <stdexcept>
#include <string>

#include "serrin/vec2.hpp"

namespace serrin {

/// Bad inputs: malformed configs, violated preconditions, invalid domains.
/// CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures: non-convergence, positivity violations, failed
/// geometric certificates. CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A sampled cone escaped the maximal cap during a (C,theta) check.
/// Carries the witness vertex so callers can report it.
class ConeEscapeError : public NumericalError {
public:
    ConeEscapeError(const std::string& what, Vec2 vertex, Vec2 escape_point)
        : NumericalError(what), vertex_(vertex), escape_point_(escape_point) {}

    Vec2 vertex() const { return vertex_; }
    Vec2 escape_point() const { return escape_point_; }

private:
    Vec2 vertex_;
    Vec2 escape_point_;
};

} // namespace serrin
