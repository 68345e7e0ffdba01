#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace basisorder {

/// Base of every exception raised by the library. Callers that only need to
/// distinguish "engine failed" from "usage error" can catch this alone.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: violated type invariants, bad JSON, out-of-range parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class EmptyOperand : public Error {
 public:
  EmptyOperand() : Error("operand is the empty set") {}
};

class NotASubset : public Error {
 public:
  explicit NotASubset(std::uint64_t x)
      : Error("element " + std::to_string(x) + " is not in the containing set"), element(x) {}
  std::uint64_t element;
};

class TooFewElements : public Error {
 public:
  TooFewElements() : Error("delta is undefined on sets with fewer than two elements") {}
};

class NoQualifyingPair : public Error {
 public:
  NoQualifyingPair() : Error("no pair of elements of A\\X is at distance >= diam(X)") {}
};

class EmptyComplement : public Error {
 public:
  EmptyComplement() : Error("A\\X is empty") {}
};

/// The h-fold sumsets were not cofinite for any h up to the cap. Either the set
/// is not a basis or the cap is too small.
class OrderCapExceeded : public Error {
 public:
  explicit OrderCapExceeded(std::uint64_t cap)
      : Error("no h <= " + std::to_string(cap) + " gives a cofinite h-fold sumset"), h_cap(cap) {}
  std::uint64_t h_cap;
};

/// A proof that the set is not an asymptotic basis of N.
class NotABasis : public Error {
 public:
  explicit NotABasis(std::string certificate)
      : Error("not an asymptotic basis (" + certificate + ")"), certificate(std::move(certificate)) {}
  std::string certificate;
};

class NotACyclicBasis : public Error {
 public:
  explicit NotACyclicBasis(std::uint64_t modulus)
      : Error("not a basis of Z/" + std::to_string(modulus) + "Z"), modulus(modulus) {}
  std::uint64_t modulus;
};

class NoQualifyingDivisor : public Error {
 public:
  NoQualifyingDivisor() : Error("no divisor d of n with d >= rho + 1") {}
};

class ZeroDensity : public Error {
 public:
  ZeroDensity() : Error("set has lower density zero") {}
};

/// A proven inequality failed on a concrete instance. Always an engine bug.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

/// Raised when a provable structural property (e.g. the periodic onset of a
/// sumset) does not hold on computed data.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class Cancelled : public Error {
 public:
  Cancelled() : Error("computation cancelled") {}
};

class PersistenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace basisorder
