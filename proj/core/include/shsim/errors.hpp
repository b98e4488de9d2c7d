#pragma once

#include <stdexcept>
#include <string>

namespace shsim {

/// Bad input values (out-of-range parameters, inconsistent specs).
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input files; message carries row/column context.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Model fitting could not satisfy its tolerance.
class FitError : public std::runtime_error {
public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Operating temperature outside the panel's datasheet window.
class OutOfTemperatureError : public std::domain_error {
public:
  explicit OutOfTemperatureError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace shsim
