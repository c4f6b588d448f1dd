#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "puiseux/rational.hpp"

namespace puiseux {

using PrimePower = std::pair<std::uint64_t, unsigned>;

// Deterministic Miller-Rabin; the first twelve prime bases are a proven
// witness set for every 64-bit input.
bool is_prime(std::uint64_t n);
// Throws DomainError for n >= 2^64.
bool is_prime(const Integer& n);

// Smallest prime strictly greater than n.
std::uint64_t next_prime_after(std::uint64_t n);

// Prime factorization sorted by prime. Trial division up to 10^6, then
// Pollard-Brent on the cofactor; cofactors of 2^64 or more are rejected.
std::vector<PrimePower> factor_integer(const Integer& n);

// Factorization of d(q); q must be positive.
std::vector<PrimePower> factor_denominator(const PosRational& q);

}  // namespace puiseux
