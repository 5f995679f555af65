#pragma once

#include <stdexcept>
#include <string>

namespace citelaw {

// Each class maps onto one CLI exit code (see tools/citelaw.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input values, malformed rows, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Too few papers / points for the requested statistic.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace citelaw
