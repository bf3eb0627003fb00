#pragma once

#include <stdexcept>
#include <string>

namespace coorbitsym {

// Base for every error raised by the library. Incompatible matrices are
// verdicts, not errors; these are reserved for malformed or out-of-domain input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class NotInSOError : public Error {
 public:
  using Error::Error;
};

class ExactnessError : public Error {
 public:
  using Error::Error;
};

class OrbitError : public Error {
 public:
  using Error::Error;
};

class ZeroLeadingCoefficientError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace coorbitsym
