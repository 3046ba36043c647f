#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Base of every error the library throws. Each subclass maps to one failure
// family so the CLI can pick an exit code without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside the mathematical domain (n < tau, negative sqrt, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quantum operation handed a stochastic coin or the other way round.
class KindError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

// |a| in {0, 1} or a boundary transition probability: closed forms divide by
// quantities that vanish there.
class DegenerateCoinError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SmallNError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

class RegimeError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class RouteDisagreementError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwalk
