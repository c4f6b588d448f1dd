#pragma once

/**
 * @file rational.hpp
 * @brief Exact nonnegative rationals and p-adic valuations.
 *
 * PosRational wraps a GMP rational that is always canonical: lowest terms,
 * positive denominator, zero stored as 0/1. Negative values are not
 * representable; subtraction is partial and reports failure instead of
 * going below zero.
 */

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace puiseux {

using Integer = mpz_class;

Integer to_integer(std::uint64_t n);
// Throws DomainError when n is negative or does not fit in 64 bits.
std::uint64_t to_u64(const Integer& n);

class PosRational {
 public:
  PosRational() = default;
  PosRational(const Integer& num, const Integer& den);
  // NOLINTNEXTLINE(google-explicit-constructor)
  PosRational(std::uint64_t n);

  // Accepts "a" or "a/b" with decimal digits only.
  static PosRational parse(std::string_view text);

  Integer num() const { return value_.get_num(); }
  Integer den() const { return value_.get_den(); }
  const mpq_class& value() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  std::string to_string() const;

  PosRational mul_nat(const Integer& k) const;
  PosRational div_nat(const Integer& k) const;

  friend PosRational operator+(const PosRational& a, const PosRational& b);
  friend PosRational operator*(const PosRational& a, const PosRational& b);
  PosRational& operator+=(const PosRational& other);

  friend bool operator==(const PosRational& a, const PosRational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const PosRational& a,
                                          const PosRational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit PosRational(mpq_class v) : value_(std::move(v)) {}
  friend std::optional<PosRational> sub_checked(const PosRational& a,
                                                const PosRational& b);

  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const PosRational& q);

PosRational make_rational(const Integer& num, const Integer& den);
PosRational add(const PosRational& a, const PosRational& b);
// Empty when a < b: the monoid has no negative elements.
std::optional<PosRational> sub_checked(const PosRational& a,
                                       const PosRational& b);
PosRational mul_nat(const PosRational& a, const Integer& k);
std::strong_ordering compare(const PosRational& a, const PosRational& b);

// floor(a / b); b must be nonzero.
Integer floor_div(const PosRational& a, const PosRational& b);

// Exponent of p in a rational, with +inf reserved for the valuation of 0.
struct Valuation {
  bool infinite = false;
  std::int64_t value = 0;

  static Valuation infinity() { return {true, 0}; }
  static Valuation of(std::int64_t v) { return {false, v}; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a,
                                          const Valuation& b) {
    if (a.infinite || b.infinite) {
      return static_cast<int>(a.infinite) <=> static_cast<int>(b.infinite);
    }
    return a.value <=> b.value;
  }
  std::string to_string() const;
};

// Number of times p divides n; n must be positive.
std::int64_t valuation(const Integer& n, std::uint64_t p);

// v_p(q) = v_p(n(q)) - v_p(d(q)); throws DomainError if p is not prime.
Valuation valuation(const PosRational& q, std::uint64_t p);

}  // namespace puiseux

template <>
struct std::hash<puiseux::PosRational> {
  std::size_t operator()(const puiseux::PosRational& q) const noexcept;
};
