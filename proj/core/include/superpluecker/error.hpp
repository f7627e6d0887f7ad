#pragma once

#include <stdexcept>
#include <string>

namespace superpluecker {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different algebras, or matrix shapes do not fit.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// An element or block that must be invertible has zero body.
class NotInvertibleError : public Error {
public:
  using Error::Error;
};

/// Input outside the domain of an operation (wrong parity, non-square body, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace superpluecker
