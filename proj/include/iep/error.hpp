#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class InvalidTriple : public Error {
 public:
  using Error::Error;
};

/// An argument left the range where the representation machinery is defined
/// (n >= pqr for chi and friends).
class DomainExceeded : public Error {
 public:
  using Error::Error;
};

class DegreeCapExceeded : public Error {
 public:
  DegreeCapExceeded(std::int64_t required, std::int64_t cap)
      : Error("degree " + std::to_string(required) + " exceeds cap " + std::to_string(cap) +
              " (raise with --degree-cap or IEP_DEGREE_CAP)"),
        required_(required),
        cap_(cap) {}

  std::int64_t required() const noexcept { return required_; }
  std::int64_t cap() const noexcept { return cap_; }

 private:
  std::int64_t required_;
  std::int64_t cap_;
};

/// An intermediate left the 63-bit guard band. Indicates an engine bug.
class OverflowDetected : public Error {
 public:
  using Error::Error;
};

/// The coefficient set of a ternary polynomial was not a run of consecutive
/// integers.
class NotConsecutive : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class UnknownLemma : public Error {
 public:
  using Error::Error;
};

class PersistenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace iep
