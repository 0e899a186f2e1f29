#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad T, V < 1, shape mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy answer:
/// non-monotone rate in a bracket, no sign change, broken +/- eigenvalue pairing.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing an external file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvqkd
