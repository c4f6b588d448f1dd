#pragma once

/**
 * @file monoid.hpp
 * @brief Descriptions of Puiseux monoids and indexed access to their atoms.
 *
 * Three families are supported:
 *
 *  - finitely generated: an explicit list of minimal generators;
 *  - atomized: atoms q_n / p_n built from a base sequence (q_n) and a
 *    sequence of pairwise distinct primes (p_n) with
 *    gcd(p_i, n(q_i)) = gcd(p_i, d(q_j)) = 1;
 *  - geometric: atoms q^n, n >= 0, for a rational q with n(q), d(q) >= 2.
 *
 * Atoms are addressed by a 1-based *position*. The spec's index_origin only
 * shifts the printed index, so Grams' monoid (origin 0) prints its first atom
 * 1/3 as index 0 while it lives at position 1.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "puiseux/rational.hpp"
#include "puiseux/semigroup.hpp"

namespace puiseux {

using Position = std::size_t;

enum class MonoidKind { FinitelyGenerated, Atomized, Geometric };

// q_{kb + r} = values[r] for a period b = values.size().
struct CyclicList {
  std::vector<PosRational> values;
};
// q_n = 1 / m^(n-1).
struct UnitFractionGeometric {
  std::uint64_t m = 2;
};
using BaseFamily = std::variant<CyclicList, UnitFractionGeometric>;

struct AllPrimesAscending {};
struct OddPrimesAscending {};
struct PrimesAbove {
  std::uint64_t bound = 1;
};
struct ExplicitList {
  std::vector<std::uint64_t> primes;
};
using PrimeRule = std::variant<AllPrimesAscending, OddPrimesAscending, PrimesAbove, ExplicitList>;

struct FinitelyGeneratedPayload {
  std::vector<PosRational> atoms;
  // Generators removed by reduce_generators; informational only.
  std::vector<PosRational> dropped;
};
struct AtomizedPayload {
  BaseFamily base;
  PrimeRule primes;
};
struct GeometricPayload {
  PosRational q;
};

struct MonoidSpec {
  std::variant<FinitelyGeneratedPayload, AtomizedPayload, GeometricPayload> payload;
  int index_origin = 1;

  MonoidKind kind() const { return static_cast<MonoidKind>(payload.index()); }
};

inline constexpr std::size_t kDefaultPrefix = 16;

// Throws ValidationError naming the first violated condition and its
// witnesses. Atomized specs are checked on positions 1..prefix (or the
// whole explicit prime list when it is shorter).
void validate(const MonoidSpec& spec, std::size_t prefix);

// Minimal generating set of the monoid generated by gens: a generator is
// kept iff it is not a sum of smaller ones. Duplicates collapse.
FinitelyGeneratedPayload reduce_generators(std::vector<PosRational> gens);

enum class Tristate { False, True, Unknown };
std::string to_string(Tristate t);

struct BaseProperties {
  Tristate antimatter = Tristate::Unknown;
  Tristate valuation = Tristate::Unknown;
};

struct WindowAtom {
  Position position;
  PosRational value;
  bool exceeds_bound;
};

namespace detail {
class PrimeSequence;
}

// A validated monoid. Copies share the (append-only, synchronized) prime
// cache, so atom(n) is deterministic across copies and threads.
class Monoid {
 public:
  explicit Monoid(MonoidSpec spec, std::size_t prefix = kDefaultPrefix);

  const MonoidSpec& spec() const { return spec_; }
  MonoidKind kind() const { return spec_.kind(); }
  int index_origin() const { return spec_.index_origin; }
  long display_index(Position position) const {
    return static_cast<long>(position) - 1 + spec_.index_origin;
  }

  // Number of atoms when finite.
  std::optional<std::size_t> atom_count() const;
  PosRational atom(Position position) const;

  // Finitely generated only.
  const std::vector<PosRational>& generators() const;
  const ScaledGenerators& scaled_generators() const;

  // Atomized only.
  const AtomizedPayload& atomized() const;
  PosRational base_value(Position position) const;
  std::uint64_t prime(Position position) const;
  // Position of p in the prime sequence, or empty when p is not a term.
  // Throws PrefixTooSmall when the cache limit is reached first.
  std::optional<Position> position_of_prime(std::uint64_t p) const;
  // Finitely generated view of the base monoid N for cyclic bases.
  const ScaledGenerators* cyclic_base() const { return cyclic_base_.get(); }
  // lcm of all base denominators (cyclic) or m (unit fractions).
  const Integer& base_denominator_lcm() const { return base_den_lcm_; }

  // Geometric only.
  const PosRational& ratio() const;

 private:
  void check_position(Position position, std::uint64_t p) const;

  MonoidSpec spec_;
  std::shared_ptr<const ScaledGenerators> fg_;
  std::shared_ptr<const ScaledGenerators> cyclic_base_;
  std::shared_ptr<detail::PrimeSequence> primes_;
  Integer base_den_lcm_ = 1;
};

PosRational atom(const Monoid& monoid, Position n);

// Atoms at positions 1..truncation (every atom for finitely generated
// monoids), flagged when larger than bound.
std::vector<WindowAtom> atoms_up_to_value(const Monoid& monoid, const PosRational& bound,
                                          std::size_t truncation);

// Membership in N = <q_n | n >= 1>.
bool base_member(const Monoid& monoid, const PosRational& x);
BaseProperties base_properties(const Monoid& monoid);

// First position j with q_j == q (within the finite prime list if any).
std::optional<Position> base_position_of_value(const Monoid& monoid, const PosRational& q);
// Next position after j carrying the same base value, if the family has one.
std::optional<Position> next_position_with_same_value(const Monoid& monoid, Position j);

MonoidSpec construct_prop44(std::uint64_t b);
MonoidSpec construct_grams();
MonoidSpec construct_reciprocal();
MonoidSpec construct_geometric(const PosRational& q);

}  // namespace puiseux
