#ifndef VARHYDRO_ERRORS_HPP
#define VARHYDRO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace varhydro
{

// Invalid user-facing argument (bad k, bad mesh sizes, layout mismatch, ...).
class InvalidArgument : public std::invalid_argument
{
public:
   using std::invalid_argument::invalid_argument;
};

// Geometry Jacobian J <= 0 detected at a quadrature point.
class InvertedElement : public std::runtime_error
{
public:
   InvertedElement(int element, int point)
      : std::runtime_error("inverted element " + std::to_string(element) +
                           " at quadrature point " + std::to_string(point)),
        element(element), point(point) { }
   int element;
   int point;
};

// Nonpositive density or temperature where positivity is required.
class PositivityError : public std::runtime_error
{
public:
   PositivityError(const std::string &what, int element = -1, int point = -1)
      : std::runtime_error(what), element(element), point(point) { }
   int element;
   int point;
};

// Bad or inconsistent run configuration.
class ConfigError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

// Direct sparse solve failed even after the LU fallback.
class LinearSolveError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

// Time step fell below dt_min or speeds became non-finite.
class StepControlError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

} // namespace varhydro

#endif
