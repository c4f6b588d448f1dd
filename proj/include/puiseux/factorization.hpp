#pragma once

/**
 * @file factorization.hpp
 * @brief Factorizations, factorization sets Z(b), and the canonical
 *        decomposition of atomized monoids.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/monoid.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

using Multiplicity = std::uint64_t;

// A finite formal sum of atoms: sorted (position, multiplicity) pairs with
// positive multiplicities. The empty sum factors 0.
class Factorization {
 public:
  using Term = std::pair<Position, Multiplicity>;

  Factorization() = default;
  // Sorts, merges repeated positions and drops zero multiplicities.
  explicit Factorization(std::vector<Term> terms);
  static Factorization single(Position position, Multiplicity count);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Multiplicity multiplicity(Position position) const;
  Multiplicity length() const;

  Factorization operator+(const Factorization& other) const;
  // this - other when other is a sub-factorization, else empty.
  std::optional<Factorization> minus(const Factorization& other) const;

  // Canonical order: lexicographic on the sorted (position, multiplicity)
  // pairs.
  friend auto operator<=>(const Factorization&, const Factorization&) = default;

 private:
  std::vector<Term> terms_;
};

// Pointwise minimum of multiplicities.
Factorization gcd_fact(const Factorization& a, const Factorization& b);
bool shares_atom(const Factorization& a, const Factorization& b);
// max(|a - gcd(a,b)|, |b - gcd(a,b)|).
Multiplicity distance(const Factorization& a, const Factorization& b);

// The factorization homomorphism.
PosRational evaluate(const Monoid& monoid, const Factorization& z);

enum class Completeness { Exact, UpToTruncation };
std::string to_string(Completeness c);

class FactorizationSet {
 public:
  // Checks that every member evaluates to element and that members are
  // distinct; stores them in canonical order.
  FactorizationSet(const Monoid& monoid, PosRational element, std::vector<Factorization> members,
                   Completeness completeness, std::size_t truncation);

  const PosRational& element() const { return element_; }
  const std::vector<Factorization>& factorizations() const { return members_; }
  Completeness completeness() const { return completeness_; }
  bool exact() const { return completeness_ == Completeness::Exact; }
  std::size_t truncation() const { return truncation_; }
  std::size_t size() const { return members_.size(); }

 private:
  PosRational element_;
  std::vector<Factorization> members_;
  Completeness completeness_;
  std::size_t truncation_;
};

// q = n_q + sum c_n * q_n / p_n with n_q in N and 0 < c_n < p_n.
struct CanonicalDecomposition {
  PosRational n_q;
  std::vector<std::pair<Position, Multiplicity>> fractional;

  PosRational reassemble(const Monoid& monoid) const;
};

// All solutions of sum c_i a_i = target.
FactorizationSet enumerate_fg(const Monoid& monoid, const PosRational& target);

// All factorizations supported on positions 1..truncation. Coefficients are
// constrained per position by the p_n-adic valuation of the target:
// p_n | c_n when v_{p_n}(target) >= 0, otherwise c_n lies in the single
// residue class mod p_n that clears the denominator. Throws
// TruncationTooSmall when a prime with negative valuation sits beyond the
// window.
FactorizationSet enumerate_atomized(const Monoid& monoid, const PosRational& target,
                                    std::size_t truncation);

// Exact for q > 1; for q < 1 the window is q^0 .. q^(truncation-1).
FactorizationSet enumerate_geometric(const Monoid& monoid, const PosRational& target,
                                     std::size_t truncation);

// Dispatches on the monoid kind.
FactorizationSet enumerate(const Monoid& monoid, const PosRational& target,
                           std::size_t truncation);

// Empty when q is not in the monoid.
std::optional<CanonicalDecomposition> canonical_decomposition(const Monoid& monoid,
                                                              const PosRational& q);

bool member(const Monoid& monoid, const PosRational& q);

}  // namespace puiseux
