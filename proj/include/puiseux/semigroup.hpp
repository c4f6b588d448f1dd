#pragma once

/**
 * @file semigroup.hpp
 * @brief Submonoids of (N0, +) given by generators, and their rational
 *        rescalings.
 *
 * Every finitely generated Puiseux monoid becomes one of these after
 * multiplying through by the lcm of the generator denominators. Membership
 * is answered from Apery tables: with g the gcd and m the smallest reduced
 * generator, x is a member iff g | x and x/g >= w[(x/g) mod m], where w[r]
 * is the least member congruent to r.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "puiseux/rational.hpp"

namespace puiseux {

// Apery table of <gens> with respect to its smallest element, after
// dividing out the gcd.
class AperyTable {
 public:
  AperyTable() = default;
  explicit AperyTable(std::span<const std::int64_t> gens);

  bool contains(std::int64_t x) const;
  std::int64_t gcd() const { return gcd_; }
  std::int64_t modulus() const { return modulus_; }
  // Largest non-member of the reduced semigroup; -1 when it is all of N0.
  std::int64_t frobenius() const;

 private:
  std::int64_t gcd_ = 0;
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> table_;
};

class IntegerKnapsack {
 public:
  // Positive generators; duplicates are allowed and kept as distinct
  // coordinates of every solution.
  explicit IntegerKnapsack(std::vector<std::int64_t> generators);

  const std::vector<std::int64_t>& generators() const { return generators_; }
  bool contains(std::int64_t x) const { return whole_.contains(x); }
  std::int64_t gcd() const { return whole_.gcd(); }
  std::int64_t frobenius() const { return whole_.frobenius(); }

  // Every c >= 0 with sum c_i * generators[i] == target, coordinates in
  // generator order. Depth-first over generators in descending order,
  // pruning residuals that the remaining generators cannot reach.
  std::vector<std::vector<std::uint64_t>> solutions(std::int64_t target) const;

 private:
  std::vector<std::int64_t> generators_;
  std::vector<std::size_t> order_;     // indices by descending generator
  std::vector<AperyTable> suffixes_;   // suffixes_[i]: generators order_[i..]
  AperyTable whole_;
};

// Rational generators multiplied through by the lcm of their denominators.
class ScaledGenerators {
 public:
  explicit ScaledGenerators(std::span<const PosRational> generators);

  const Integer& scale() const { return scale_; }
  const IntegerKnapsack& knapsack() const { return knapsack_; }

  // x * scale when that is an integer, else empty. Throws DomainError when
  // the scaled value does not fit the enumeration range.
  std::optional<std::int64_t> to_scaled(const PosRational& x) const;
  PosRational from_scaled(std::int64_t n) const;
  bool contains(const PosRational& x) const;

 private:
  Integer scale_;
  IntegerKnapsack knapsack_;
};

}  // namespace puiseux
