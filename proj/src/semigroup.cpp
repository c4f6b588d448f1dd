#include "puiseux/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "puiseux/error.hpp"

namespace puiseux {

namespace {

constexpr std::int64_t kMaxReducedGenerator = 1'000'000'000;
constexpr std::int64_t kMaxModulus = 10'000'000;
constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

Integer lcm_of_denominators(std::span<const PosRational> gens) {
  Integer l = 1;
  for (const auto& g : gens) {
    Integer d = g.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

std::vector<std::int64_t> scale_all(std::span<const PosRational> gens, const Integer& scale) {
  std::vector<std::int64_t> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.is_zero()) throw DomainError("generators must be positive");
    const Integer v = g.num() * (scale / g.den());
    if (!v.fits_slong_p()) throw DomainError("scaled generator " + v.get_str() + " too large");
    out.push_back(v.get_si());
  }
  return out;
}

}  // namespace

AperyTable::AperyTable(std::span<const std::int64_t> gens) {
  if (gens.empty()) {
    gcd_ = 0;
    return;
  }
  std::int64_t g = 0;
  for (auto x : gens) {
    if (x <= 0) throw DomainError("semigroup generators must be positive");
    g = std::gcd(g, x);
  }
  gcd_ = g;
  std::vector<std::int64_t> reduced;
  reduced.reserve(gens.size());
  for (auto x : gens) {
    if (x / g > kMaxReducedGenerator) {
      throw DomainError("semigroup generator " + std::to_string(x) + " exceeds supported size");
    }
    reduced.push_back(x / g);
  }
  modulus_ = *std::min_element(reduced.begin(), reduced.end());
  if (modulus_ > kMaxModulus) {
    throw DomainError("smallest generator " + std::to_string(modulus_) + " exceeds Apery table limit");
  }
  table_.assign(static_cast<std::size_t>(modulus_), kUnreached);
  table_[0] = 0;
  using Item = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(0, 0);
  while (!queue.empty()) {
    const auto [dist, r] = queue.top();
    queue.pop();
    if (dist != table_[static_cast<std::size_t>(r)]) continue;
    for (auto a : reduced) {
      const std::int64_t next = (r + a) % modulus_;
      if (dist + a < table_[static_cast<std::size_t>(next)]) {
        table_[static_cast<std::size_t>(next)] = dist + a;
        queue.emplace(dist + a, next);
      }
    }
  }
}

bool AperyTable::contains(std::int64_t x) const {
  if (x < 0) return false;
  if (x == 0) return true;
  if (gcd_ == 0 || x % gcd_ != 0) return false;
  const std::int64_t y = x / gcd_;
  return y >= table_[static_cast<std::size_t>(y % modulus_)];
}

std::int64_t AperyTable::frobenius() const {
  if (gcd_ == 0) return -1;
  return *std::max_element(table_.begin(), table_.end()) - modulus_;
}

IntegerKnapsack::IntegerKnapsack(std::vector<std::int64_t> generators)
    : generators_(std::move(generators)), whole_(generators_) {
  if (generators_.empty()) throw DomainError("knapsack needs at least one generator");
  order_.resize(generators_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return generators_[a] > generators_[b];
  });
  suffixes_.reserve(order_.size() + 1);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    std::vector<std::int64_t> tail;
    for (std::size_t j = i; j < order_.size(); ++j) tail.push_back(generators_[order_[j]]);
    suffixes_.emplace_back(tail);
  }
  suffixes_.emplace_back();  // empty suffix: only 0
}

std::vector<std::vector<std::uint64_t>> IntegerKnapsack::solutions(std::int64_t target) const {
  std::vector<std::vector<std::uint64_t>> out;
  if (!contains(target)) return out;
  std::vector<std::uint64_t> coeffs(generators_.size(), 0);
  const std::size_t k = order_.size();
  std::function<void(std::size_t, std::int64_t)> descend = [&](std::size_t level,
                                                               std::int64_t residual) {
    const std::size_t idx = order_[level];
    const std::int64_t gen = generators_[idx];
    if (level + 1 == k) {
      if (residual % gen == 0) {
        coeffs[idx] = static_cast<std::uint64_t>(residual / gen);
        out.push_back(coeffs);
        coeffs[idx] = 0;
      }
      return;
    }
    for (std::int64_t c = residual / gen; c >= 0; --c) {
      const std::int64_t rest = residual - c * gen;
      if (!suffixes_[level + 1].contains(rest)) continue;
      coeffs[idx] = static_cast<std::uint64_t>(c);
      descend(level + 1, rest);
    }
    coeffs[idx] = 0;
  };
  descend(0, target);
  return out;
}

ScaledGenerators::ScaledGenerators(std::span<const PosRational> generators)
    : scale_(lcm_of_denominators(generators)),
      knapsack_(scale_all(generators, scale_)) {}

std::optional<std::int64_t> ScaledGenerators::to_scaled(const PosRational& x) const {
  const Integer n = x.num() * scale_;
  if (!mpz_divisible_p(n.get_mpz_t(), x.den().get_mpz_t())) return std::nullopt;
  const Integer v = n / x.den();
  if (!v.fits_slong_p()) {
    throw DomainError("element " + x.to_string() + " is too large to enumerate");
  }
  return v.get_si();
}

PosRational ScaledGenerators::from_scaled(std::int64_t n) const {
  return PosRational(Integer(n), scale_);
}

bool ScaledGenerators::contains(const PosRational& x) const {
  const auto n = to_scaled(x);
  return n && knapsack_.contains(*n);
}

}  // namespace puiseux
