#include "puiseux/primes.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "puiseux/error.hpp"

namespace puiseux {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool witness_passes(u64 n, u64 d, unsigned s, u64 a) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; n must be odd and composite.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr u64 kBlock = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += kBlock) {
        ys = y;
        for (u64 i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  return std::all_of(kBases.begin(), kBases.end(),
                     [&](u64 a) { return witness_passes(n, d, s, a); });
}

bool is_prime(const Integer& n) {
  if (sgn(n) <= 0) return false;
  return is_prime(to_u64(n));
}

std::uint64_t next_prime_after(std::uint64_t n) {
  for (u64 c = n + 1; c > n; ++c) {
    if (is_prime(c)) return c;
  }
  throw DomainError("no 64-bit prime after " + std::to_string(n));
}

std::vector<PrimePower> factor_integer(const Integer& n) {
  if (sgn(n) <= 0) throw DomainError("factor_integer needs a positive integer");
  std::vector<PrimePower> result;
  Integer rest = n;
  for (u64 p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (rest == 1) break;
    if (Integer(p) * Integer(p) > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) result.emplace_back(p, e);
  }
  if (rest != 1) {
    if (mpz_sizeinbase(rest.get_mpz_t(), 2) > 64) {
      throw DomainError("cofactor " + rest.get_str() + " exceeds 64 bits");
    }
    std::vector<u64> primes;
    factor_u64(to_u64(rest), primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
      if (!result.empty() && result.back().first == p) {
        ++result.back().second;
      } else {
        result.emplace_back(p, 1);
      }
    }
  }
  return result;
}

std::vector<PrimePower> factor_denominator(const PosRational& q) {
  if (q.is_zero()) throw DomainError("factor_denominator needs q > 0");
  return factor_integer(q.den());
}

}  // namespace puiseux
