#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "puiseux/error.hpp"
#include "puiseux/monoid.hpp"
#include "puiseux/primes.hpp"

using namespace puiseux;

namespace {

PosRational r(const char* s) { return PosRational::parse(s); }

MonoidSpec fg(std::vector<PosRational> atoms) {
  return MonoidSpec{FinitelyGeneratedPayload{std::move(atoms), {}}, 1};
}

MonoidSpec atomized(BaseFamily base, PrimeRule primes) {
  return MonoidSpec{AtomizedPayload{std::move(base), std::move(primes)}, 1};
}

std::string validation_message(const MonoidSpec& spec) {
  try {
    validate(spec, kDefaultPrefix);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("atoms of the named families") {
  const Monoid grams(construct_grams());
  CHECK(atom(grams, 1) == r("1/3"));
  CHECK(atom(grams, 2) == r("1/10"));
  CHECK(atom(grams, 3) == r("1/28"));
  CHECK(atom(grams, 4) == r("1/88"));
  CHECK(grams.display_index(1) == 0);
  CHECK(grams.prime(4) == 11);

  const Monoid reciprocal(construct_reciprocal());
  CHECK(atom(reciprocal, 1) == r("1/2"));
  CHECK(atom(reciprocal, 2) == r("1/3"));
  CHECK(atom(reciprocal, 3) == r("1/5"));
  CHECK(reciprocal.display_index(1) == 1);

  const Monoid p3(construct_prop44(3));
  const std::vector<PosRational> expected = {r("1/5"), r("2/7"), r("3/11"), r("1/13"), r("2/17"), r("3/19")};
  for (Position n = 1; n <= expected.size(); ++n) CHECK(atom(p3, n) == expected[n - 1]);

  const Monoid geo(construct_geometric(r("3/2")));
  CHECK(atom(geo, 1) == PosRational(1));
  CHECK(atom(geo, 3) == r("9/4"));
  CHECK_FALSE(geo.atom_count().has_value());
}

TEST_CASE("atoms of an atomization are q_n / p_n with distinct primes") {
  for (const auto& spec : {construct_grams(), construct_reciprocal(), construct_prop44(2), construct_prop44(5)}) {
    const Monoid m(spec);
    std::set<std::uint64_t> seen;
    for (Position n = 1; n <= 40; ++n) {
      const auto p = m.prime(n);
      CHECK(is_prime(p));
      CHECK(seen.insert(p).second);
      CHECK(m.atom(n) == m.base_value(n).div_nat(to_integer(p)));
      CHECK(m.position_of_prime(p) == n);
    }
  }
}

TEST_CASE("finitely generated atoms are sorted and must be minimal") {
  const Monoid m(fg({r("7"), r("5"), r("23")}));
  CHECK(m.generators() == std::vector<PosRational>{r("5"), r("7"), r("23")});
  CHECK(m.atom_count() == 3u);
  CHECK(validation_message(fg({r("5"), r("7"), r("17"), r("23")})).find("17") != std::string::npos);
  CHECK(validation_message(fg({r("1/2"), r("1")})).find("not minimal") != std::string::npos);
  CHECK_FALSE(validation_message(fg({})).empty());
  CHECK_FALSE(validation_message(fg({r("0"), r("1")})).empty());
  CHECK_FALSE(validation_message(fg({r("2"), r("2")})).empty());
}

TEST_CASE("reduce_generators agrees with a sieve") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> d(1, 30);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::int64_t> raw;
    std::vector<PosRational> gens;
    for (int i = 0; i < 5; ++i) {
      raw.push_back(d(rng));
      gens.emplace_back(static_cast<std::uint64_t>(raw.back()));
    }
    const auto reduced = reduce_generators(gens);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<std::int64_t> expected;
    for (auto g : raw) {
      std::vector<std::int64_t> smaller;
      for (auto h : raw) if (h < g) smaller.push_back(h);
      if (!oracle::sieve(smaller, g)[g] || smaller.empty()) expected.push_back(g);
    }
    std::vector<std::int64_t> got;
    for (const auto& a : reduced.atoms) got.push_back(to_u64(a.num()));
    CHECK(got == expected);
    CHECK(reduced.atoms.size() + reduced.dropped.size() == raw.size());
    CHECK(validation_message(fg(reduced.atoms)).empty());
  }
  CHECK(reduce_generators({r("5"), r("7"), r("17"), r("23")}).dropped == std::vector<PosRational>{r("17")});
}

TEST_CASE("atomization conditions are checked with witnesses") {
  // p_2 = 3 divides n(q_2) = 3.
  const auto msg = validation_message(atomized(CyclicList{{r("3")}}, AllPrimesAscending{}));
  CHECK(msg.find("gcd(p_2, n(q_2)) = 3 != 1") != std::string::npos);
  // p_1 = 2 divides d(q_1) = 2.
  CHECK(validation_message(atomized(CyclicList{{r("1/2")}}, AllPrimesAscending{})).find("d(q_1)") !=
        std::string::npos);
  // Odd primes avoid every power of 2 in the denominators.
  CHECK(validation_message(atomized(UnitFractionGeometric{2}, OddPrimesAscending{})).empty());
  CHECK_FALSE(validation_message(atomized(UnitFractionGeometric{2}, AllPrimesAscending{})).empty());
  CHECK_FALSE(validation_message(atomized(UnitFractionGeometric{1}, OddPrimesAscending{})).empty());
  CHECK_FALSE(validation_message(atomized(CyclicList{{}}, AllPrimesAscending{})).empty());
  CHECK_FALSE(validation_message(atomized(CyclicList{{r("1")}}, ExplicitList{{3, 9}})).empty());
  CHECK_FALSE(validation_message(atomized(CyclicList{{r("1")}}, ExplicitList{{5, 3}})).empty());
  CHECK_FALSE(validation_message(atomized(CyclicList{{r("1")}}, ExplicitList{{}})).empty());
  CHECK(validation_message(atomized(CyclicList{{r("1")}}, ExplicitList{{3, 5, 7}})).empty());
}

TEST_CASE("gcd conditions beyond the validated prefix are enforced lazily") {
  // q_n = 1 for n < 20 and p_20 = 71 divides n(q_20) = 71 with a period of 20.
  CyclicList base;
  for (int i = 0; i < 19; ++i) base.values.emplace_back(1);
  base.values.emplace_back(71);
  const Monoid m(atomized(base, AllPrimesAscending{}), 4);
  CHECK(m.prime(19) == 67);
  CHECK_THROWS_AS(m.prime(20), ValidationError);
}

TEST_CASE("geometric ratios need non-unit numerator and denominator") {
  CHECK_THROWS_AS(construct_geometric(r("2")), DomainError);
  CHECK_THROWS_AS(construct_geometric(r("1/2")), DomainError);
  CHECK_THROWS_AS(construct_geometric(r("1")), DomainError);
  CHECK_NOTHROW(construct_geometric(r("2/3")));
}

TEST_CASE("explicit prime lists are finite") {
  const Monoid m(atomized(CyclicList{{r("1")}}, ExplicitList{{3, 5, 7}}));
  CHECK(m.atom_count() == 3u);
  CHECK(m.position_of_prime(5) == 2u);
  CHECK_FALSE(m.position_of_prime(11).has_value());
}

TEST_CASE("base monoid properties") {
  const Monoid grams(construct_grams());
  CHECK(base_properties(grams).antimatter == Tristate::True);
  CHECK(base_properties(grams).valuation == Tristate::True);
  CHECK(base_member(grams, r("3/64")));
  CHECK_FALSE(base_member(grams, r("1/3")));
  CHECK(base_position_of_value(grams, r("1/8")) == 4u);
  CHECK_FALSE(base_position_of_value(grams, r("3/8")).has_value());
  CHECK(next_position_with_same_value(grams, 2) == std::nullopt);

  const Monoid p3(construct_prop44(3));
  CHECK(base_properties(p3).antimatter == Tristate::False);
  CHECK(base_properties(p3).valuation == Tristate::True);
  CHECK(base_position_of_value(p3, r("2")) == 2u);
  CHECK(next_position_with_same_value(p3, 2) == 5u);

  // N = <2, 3> is not a valuation monoid: neither of 2, 3 divides the other.
  const Monoid m(atomized(CyclicList{{r("2"), r("3")}}, PrimesAbove{3}));
  CHECK(base_properties(m).valuation == Tristate::False);
  CHECK_FALSE(base_member(m, r("1")));
  CHECK(base_member(m, r("5")));

  // UFG(6): N contains 1/6^k sums; d(x) must be built from 2 and 3.
  const Monoid six(atomized(UnitFractionGeometric{6}, PrimesAbove{3}));
  CHECK(base_member(six, r("5/36")));
  CHECK(base_member(six, r("1/4")));  // 9/36
  CHECK_FALSE(base_member(six, r("1/5")));
}

TEST_CASE("atoms_up_to_value flags large atoms") {
  const Monoid m(construct_prop44(2));
  const auto window = atoms_up_to_value(m, r("1/3"), 4);
  REQUIRE(window.size() == 4);
  CHECK(window[0].value == r("1/3"));
  CHECK_FALSE(window[0].exceeds_bound);
  CHECK(window[1].exceeds_bound);  // 2/5
  CHECK_FALSE(window[2].exceeds_bound);  // 1/7
}
