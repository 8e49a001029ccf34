#pragma once

#include <stdexcept>
#include <string>

namespace patrol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document or number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A network document that violates a structural invariant.
class InvalidNetwork : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (not a tree, alpha out of range, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A certificate-backed claim could not be certified.
class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace patrol
