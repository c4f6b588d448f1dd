#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "puiseux/error.hpp"
#include "puiseux/factorization.hpp"

using namespace puiseux;

namespace {

PosRational r(const char* s) { return PosRational::parse(s); }

Monoid fg(const std::vector<PosRational>& gens) {
  return Monoid(MonoidSpec{reduce_generators(gens), 1});
}

std::vector<mpq_class> window_atoms(const Monoid& m, std::size_t k) {
  std::vector<mpq_class> out;
  for (Position n = 1; n <= k; ++n) out.push_back(oracle::mpq(m.atom(n)));
  return out;
}

}  // namespace

TEST_CASE("factorization arithmetic") {
  const Factorization a({{2, 1}, {1, 3}, {2, 2}, {5, 0}});
  CHECK(a.terms() == std::vector<Factorization::Term>{{1, 3}, {2, 3}});
  CHECK(a.length() == 6);
  CHECK(a.multiplicity(2) == 3);
  CHECK(a.multiplicity(5) == 0);
  const Factorization b({{2, 1}, {3, 4}});
  CHECK(gcd_fact(a, b) == Factorization::single(2, 1));
  CHECK(shares_atom(a, b));
  CHECK_FALSE(shares_atom(a, Factorization::single(4, 1)));
  CHECK(distance(a, b) == 5);  // |a - gcd| = 5, |b - gcd| = 4
  CHECK(distance(a, a) == 0);
  CHECK((a + b).multiplicity(2) == 4);
  CHECK(*a.minus(Factorization::single(1, 3)) == Factorization::single(2, 3));
  CHECK_FALSE(a.minus(b).has_value());
  CHECK(Factorization().empty());
  CHECK(Factorization::single(3, 0).empty());
}

TEST_CASE("Z(6) in <2,3> and Z(46) in <5,7,23>") {
  const Monoid m23 = fg({r("2"), r("3")});
  const auto z6 = enumerate_fg(m23, r("6"));
  CHECK(z6.exact());
  CHECK(oracle::dense_all(z6, 2) == std::vector<oracle::Vec>{{0, 2}, {3, 0}});

  const Monoid n = fg({r("5"), r("7"), r("17"), r("23")});
  REQUIRE(n.generators().size() == 3);
  const auto z46 = enumerate_fg(n, r("46"));
  CHECK(oracle::dense_all(z46, 3) == oracle::box_solutions({5, 7, 23}, 46));
  CHECK(z46.size() == 2);
  CHECK(enumerate_fg(n, r("5")).size() == 1);
  CHECK(enumerate_fg(n, r("11")).size() == 0);
  const auto z0 = enumerate_fg(n, r("0"));
  REQUIRE(z0.size() == 1);
  CHECK(z0.factorizations().front().empty());
}

TEST_CASE("finitely generated enumeration matches box enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> num(1, 30), den(1, 4);
  for (int t = 0; t < 40; ++t) {
    std::vector<PosRational> gens;
    for (int i = 0; i < 4; ++i) gens.emplace_back(to_integer(num(rng)), to_integer(den(rng)));
    const Monoid m = fg(gens);
    const auto& atoms = m.generators();
    std::vector<mpq_class> q;
    for (const auto& a : atoms) q.push_back(oracle::mpq(a));
    for (int k = 0; k < 8; ++k) {
      const PosRational target(to_integer(num(rng) * 2), to_integer(den(rng)));
      const auto zset = enumerate_fg(m, target);
      CAPTURE(target.to_string());
      CHECK(oracle::dense_all(zset, atoms.size()) == oracle::box_solutions(q, oracle::mpq(target)));
      CHECK(member(m, target) == (zset.size() > 0));
      for (const auto& z : zset.factorizations()) CHECK(evaluate(m, z) == target);
    }
  }
}

TEST_CASE("atomized enumeration matches box enumeration on the window") {
  struct Case {
    MonoidSpec spec;
    const char* target;
    std::size_t T;
  };
  const std::vector<Case> cases = {
      {construct_grams(), "1", 4},          {construct_grams(), "1/2", 4},
      {construct_grams(), "1/4", 5},        {construct_grams(), "3/4", 4},
      {construct_reciprocal(), "1", 4},     {construct_reciprocal(), "5/6", 4},
      {construct_reciprocal(), "2", 3},     {construct_prop44(3), "2", 4},
      {construct_prop44(3), "3", 5},        {construct_prop44(2), "11/15", 4},
  };
  for (const auto& c : cases) {
    const Monoid m(c.spec);
    const auto zset = enumerate_atomized(m, r(c.target), c.T);
    CAPTURE(c.target);
    CHECK(oracle::dense_all(zset, c.T) == oracle::box_solutions(window_atoms(m, c.T), oracle::mpq(r(c.target))));
  }
}

TEST_CASE("atomized completeness flags") {
  const Monoid reciprocal(construct_reciprocal());
  CHECK_FALSE(enumerate_atomized(reciprocal, r("1"), 6).exact());

  const Monoid finite(MonoidSpec{AtomizedPayload{CyclicList{{r("1")}}, ExplicitList{{3, 5, 7}}}, 1});
  const auto z = enumerate_atomized(finite, r("2"), 8);
  CHECK(z.exact());
  CHECK(z.truncation() == 3);  // the effective window
  CHECK(oracle::dense_all(z, 3) == oracle::box_solutions({mpq_class(1, 3), mpq_class(1, 5), mpq_class(1, 7)}, 2));

  // prop44(2) has base values 1, 2: nothing beyond the window fits below 1.
  const Monoid p2(construct_prop44(2));
  CHECK(enumerate_atomized(p2, r("1/2"), 2).exact());
  CHECK_FALSE(enumerate_atomized(p2, r("1"), 2).exact());
}

TEST_CASE("forced atoms beyond the window are reported") {
  const Monoid reciprocal(construct_reciprocal());
  CHECK_THROWS_AS(enumerate_atomized(reciprocal, r("1/7"), 3), TruncationTooSmall);
  CHECK_NOTHROW(enumerate_atomized(reciprocal, r("1/7"), 4));
  // v_2 = -2 admits no factorization at all.
  CHECK(enumerate_atomized(reciprocal, r("1/4"), 4).size() == 0);
}

TEST_CASE("geometric enumeration above 1 is exact") {
  const Monoid m(construct_geometric(r("3/2")));
  std::vector<mpq_class> atoms;
  for (int e = 0; e < 6; ++e) atoms.push_back(oracle::mpq(m.atom(e + 1)));
  for (std::uint64_t k = 0; k <= 48; ++k) {
    const PosRational target(to_integer(k), to_integer(8));
    const auto zset = enumerate_geometric(m, target, 8);
    CAPTURE(target.to_string());
    CHECK(zset.exact());
    // Atoms above 6 are (3/2)^5 > 7 and cannot occur in targets <= 6.
    CHECK(oracle::dense_all(zset, 6) == oracle::box_solutions(atoms, oracle::mpq(target)));
    CHECK(member(m, target) == (zset.size() > 0));
  }
}

TEST_CASE("geometric monoids below 1") {
  const Monoid m(construct_geometric(r("2/3")));
  const std::size_t T = 5;
  std::vector<mpq_class> atoms;
  for (Position n = 1; n <= T; ++n) atoms.push_back(oracle::mpq(m.atom(n)));
  for (std::uint64_t k = 0; k <= 40; ++k) {
    const PosRational target(to_integer(k), to_integer(27));
    const auto zset = enumerate_geometric(m, target, T);
    CHECK(zset.exact() == target.is_zero());
    const auto box = oracle::box_solutions(atoms, oracle::mpq(target));
    CHECK(oracle::dense_all(zset, T) == box);
    // A window factorization proves membership.
    if (!box.empty()) CHECK(member(m, target));
  }
  // Denominators must divide a power of 3.
  CHECK_FALSE(member(m, r("1/2")));
  CHECK_FALSE(member(m, r("1/405")));
  CHECK(member(m, r("4/9")));
  CHECK(member(m, r("2")));  // 3 * 2/3
}

TEST_CASE("geometric membership below 1 agrees with deep window search") {
  // Trading 3 q^(n+1) for 2 q^n leaves at most 2 copies of each deep power,
  // and then the deepest power used fixes the 3-adic valuation. So a member
  // with d(x) | 27 factors over q^0..q^3.
  const Monoid m(construct_geometric(r("2/3")));
  std::vector<mpq_class> atoms;
  for (Position n = 1; n <= 5; ++n) atoms.push_back(oracle::mpq(m.atom(n)));
  for (std::uint64_t k = 0; k <= 60; ++k) {
    const PosRational target(to_integer(k), to_integer(27));
    const bool by_box = !oracle::box_solutions(atoms, oracle::mpq(target)).empty();
    CAPTURE(target.to_string());
    CHECK(member(m, target) == by_box);
  }
}

TEST_CASE("canonical decompositions") {
  const Monoid reciprocal(construct_reciprocal());
  const auto c = canonical_decomposition(reciprocal, r("5/6"));
  REQUIRE(c.has_value());
  CHECK(c->n_q == PosRational(0));
  CHECK(c->fractional == std::vector<std::pair<Position, Multiplicity>>{{1, 1}, {2, 1}});
  CHECK(c->reassemble(reciprocal) == r("5/6"));

  const auto whole = canonical_decomposition(reciprocal, r("7/3"));
  REQUIRE(whole.has_value());
  CHECK(whole->n_q == PosRational(2));
  CHECK(whole->fractional == std::vector<std::pair<Position, Multiplicity>>{{2, 1}});

  CHECK_FALSE(canonical_decomposition(reciprocal, r("1/4")).has_value());
  CHECK_FALSE(member(reciprocal, r("1/4")));

  const Monoid grams(construct_grams());
  // 1/3 + 3/10 = 19/30.
  const auto g = canonical_decomposition(grams, r("19/30"));
  REQUIRE(g.has_value());
  CHECK(g->n_q == PosRational(0));
  CHECK(g->fractional == std::vector<std::pair<Position, Multiplicity>>{{1, 1}, {2, 3}});
  CHECK_FALSE(canonical_decomposition(grams, r("1/9")).has_value());
  // 1/6 = 1/2 * 1/3 needs the atom 1/3 with coefficient 1/2.
  CHECK_FALSE(member(grams, r("1/6")));
  CHECK(member(grams, r("1/6") + r("1/3")));

  const Monoid p3(construct_prop44(3));
  const auto q = canonical_decomposition(p3, r("2/7") + r("3")) ;
  REQUIRE(q.has_value());
  CHECK(q->n_q == PosRational(3));
  CHECK(q->fractional == std::vector<std::pair<Position, Multiplicity>>{{2, 1}});
  // 1/2 is not in <1, 2, 3> + atoms with primes above 3.
  CHECK_FALSE(member(p3, r("1/2")));
}

TEST_CASE("factorization sets reject inconsistent members") {
  const Monoid m = fg({r("2"), r("3")});
  CHECK_THROWS(FactorizationSet(m, r("6"), {Factorization::single(1, 2)}, Completeness::Exact, 2));
  CHECK_THROWS(FactorizationSet(m, r("6"), {Factorization::single(1, 3), Factorization::single(1, 3)},
                                Completeness::Exact, 2));
}
