#pragma once

#include <stdexcept>
#include <string>

namespace grpd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed group spec, table file, or catalog line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input data violates a structural axiom (group/groupoid/functor/involution).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A configured size cap was exceeded.
class CapError : public Error {
 public:
  using Error::Error;
};

// An operation precondition does not hold for the given arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotInCatalogError : public Error {
 public:
  using Error::Error;
};

// Evaluation at t = 1 hit a net pole; `order` is the remaining denominator
// multiplicity of (1 - t) after cancellation.
class PoleError : public Error {
 public:
  explicit PoleError(int order)
      : Error("pole of order " + std::to_string(order) + " at t = 1"),
        order_(order) {}
  int order() const { return order_; }

 private:
  int order_;
};

class ZeroPartialSumError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace grpd
