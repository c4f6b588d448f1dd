#pragma once

/**
 * @file invariants.hpp
 * @brief Sets of lengths, delta sets and catenary degrees.
 *
 * Standard definitions are used throughout. The distance between two
 * factorizations is d(z, z') = max(|z - gcd(z,z')|, |z' - gcd(z,z')|); an
 * N-chain is a sequence of factorizations of one element whose consecutive
 * distances are at most N; the catenary degree of b is the least N joining
 * every pair of factorizations of b by an N-chain. The delta set of L(b)
 * collects the gaps between consecutive lengths.
 *
 * Truncated factorization sets are refused: these invariants depend on the
 * whole set.
 */

#include <vector>

#include "puiseux/factorization.hpp"

namespace puiseux {

struct LengthSet {
  PosRational element;
  std::vector<Multiplicity> lengths;
  Completeness completeness;
};

LengthSet length_set(const FactorizationSet& zset);

std::vector<Multiplicity> delta_set(const LengthSet& lengths);

// Least N for which the graph joining factorizations at distance <= N is
// connected (0 for a single factorization). Sorts pairwise distances and
// sweeps them through a union-find.
Multiplicity catenary_degree_element(const FactorizationSet& zset);
Multiplicity catenary_degree(const std::vector<Factorization>& zs);

struct CatenaryReport {
  Multiplicity value = 0;
  std::vector<PosRational> attaining;
};

// Maximum over the same exhaustive range as the Betti scan. The supremum is
// attained at a Betti element, and every Betti element lies in that range,
// so the maximum found is the catenary degree of the monoid. Attaining
// elements are reported only when the value is positive.
CatenaryReport catenary_degree_monoid_upto(const Monoid& monoid);

}  // namespace puiseux
