#pragma once

#include <stdexcept>
#include <string>

namespace mor {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid construction parameters (non-prime p, reducible modulus, n < 2, ...).
class InvalidParams : public Error {
public:
  using Error::Error;
};

/// Operands belong to different fields/groups or have the wrong shape.
class ParamMismatch : public Error {
public:
  using Error::Error;
};

/// Multiplicative inverse of zero requested.
class DivisionByZero : public Error {
public:
  using Error::Error;
};

/// Collected-word exponent outside [0, p).
class ExponentOutOfRange : public Error {
public:
  using Error::Error;
};

/// Operation undefined for these parameters (e.g. central automorphisms for n < 3).
class Unsupported : public Error {
public:
  using Error::Error;
};

/// A generator-image table has a non-invertible layer action; it does not
/// describe an automorphism.
class SingularLayer : public Error {
public:
  using Error::Error;
};

/// The field is too small to sample the requested structure (q <= n).
class ParamsTooSmall : public Error {
public:
  using Error::Error;
};

/// Ciphertext cannot be decrypted (its table is not an automorphism).
class MalformedCiphertext : public Error {
public:
  using Error::Error;
};

/// Message does not fit into one group element.
class MessageTooLong : public Error {
public:
  using Error::Error;
};

/// A matrix does not carry a valid message encoding.
class MalformedMessage : public Error {
public:
  using Error::Error;
};

/// Discrete-log target lies outside the subgroup generated by the base.
class NoSolution : public Error {
public:
  using Error::Error;
};

/// Secret recovery exhausted the key space (the key is malformed).
class AttackFailed : public Error {
public:
  using Error::Error;
};

/// Additive attack found no usable superdiagonal entry.
class AllSuperdiagonalZero : public Error {
public:
  using Error::Error;
};

/// Additive attack found no nonzero central offset (the table is the identity).
class AllCentralOffsetsZero : public Error {
public:
  using Error::Error;
};

/// A key/ciphertext file failed to parse or validate.
class MalformedFile : public Error {
public:
  using Error::Error;
};

/// A key/ciphertext file has an unknown version field.
class VersionUnsupported : public Error {
public:
  using Error::Error;
};

} // namespace mor
