#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rrp {

// Base class for every error the library reports on bad input or unmet
// preconditions. The CLI maps all of them to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class CertificateError : public Error {
 public:
  using Error::Error;
};

// Raised by flow-path evaluation; index is the position of the first
// offending link.
class PathError : public Error {
 public:
  PathError(const std::string& reason, std::size_t index)
      : Error(reason + " at link " + std::to_string(index)),
        reason_(reason),
        index_(index) {}

  const std::string& reason() const { return reason_; }
  std::size_t index() const { return index_; }

 private:
  std::string reason_;
  std::size_t index_;
};

}  // namespace rrp
