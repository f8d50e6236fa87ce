#pragma once

#include <stdexcept>
#include <string>

namespace wkc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation would exceed a documented size ceiling.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace wkc
