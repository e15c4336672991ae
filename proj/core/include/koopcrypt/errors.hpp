#pragma once

#include <stdexcept>

namespace koopcrypt {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NoInverseError : public Error {
 public:
  using Error::Error;
};

/// An RSA secret exponent is not a unit modulo the totient.
class KeyError : public Error {
 public:
  using Error::Error;
};

/// Not enough samples to read the requested indices.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The unit-circle reconstruction loop did not terminate within the modulus.
class InversionFailure : public Error {
 public:
  using Error::Error;
};

/// Requested lifting dimension is below the minimum that admits a closing vector.
class InfeasibleDimension : public Error {
 public:
  using Error::Error;
};

class NonDiagonalizable : public Error {
 public:
  using Error::Error;
};

/// Z lacks full row rank; reduce the lifting dimension first.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

class RecoveryFailure : public Error {
 public:
  using Error::Error;
};

/// Every excited eigenvalue is real, so angles carry no information.
class InsufficientSpectrum : public RecoveryFailure {
 public:
  using RecoveryFailure::RecoveryFailure;
};

class DegenerateCoordinate : public RecoveryFailure {
 public:
  using RecoveryFailure::RecoveryFailure;
};

/// Malformed textual input (sequence files, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace koopcrypt
