#pragma once

#include <stdexcept>
#include <string>

namespace puiseux {

// Base of every error raised by the library. The CLI maps the concrete
// types onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed numeric input: zero denominators, signs, composite "primes".
class DomainError : public Error {
 public:
  using Error::Error;
};

// A monoid description failed one of its structural conditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A truncated enumeration would be empty because a forced atom lies
// beyond the requested window.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

// A prime could not be located in the atomization sequence within the
// supported cache size.
class PrefixTooSmall : public Error {
 public:
  using Error::Error;
};

class NotAMember : public Error {
 public:
  using Error::Error;
};

// An invariant that needs the complete factorization set was handed a
// truncated one.
class TruncatedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace puiseux
