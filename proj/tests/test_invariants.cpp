#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "puiseux/betti.hpp"
#include "puiseux/error.hpp"
#include "puiseux/invariants.hpp"

using namespace puiseux;

namespace {

PosRational r(const char* s) { return PosRational::parse(s); }

Monoid fg(const std::vector<PosRational>& gens) {
  return Monoid(MonoidSpec{reduce_generators(gens), 1});
}

std::vector<Multiplicity> oracle_lengths(const std::vector<oracle::Vec>& vs) {
  std::set<Multiplicity> out;
  for (const auto& v : vs) out.insert(std::accumulate(v.begin(), v.end(), Multiplicity{0}));
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("lengths and delta sets") {
  const Monoid m23 = fg({r("2"), r("3")});
  const auto l6 = length_set(enumerate_fg(m23, r("6")));
  CHECK(l6.lengths == std::vector<Multiplicity>{2, 3});
  CHECK(delta_set(l6) == std::vector<Multiplicity>{1});
  const auto l0 = length_set(enumerate_fg(m23, r("0")));
  CHECK(l0.lengths == std::vector<Multiplicity>{0});
  CHECK(delta_set(l0).empty());
  CHECK(delta_set(length_set(enumerate_fg(m23, r("4")))).empty());

  const Monoid n = fg({r("5"), r("7"), r("23")});
  const auto z46 = enumerate_fg(n, r("46"));
  CHECK(length_set(z46).lengths == oracle_lengths(oracle::box_solutions({5, 7, 23}, 46)));
  CHECK(length_set(z46).lengths == std::vector<Multiplicity>{2, 8});
  CHECK(delta_set(length_set(z46)) == std::vector<Multiplicity>{6});
}

TEST_CASE("truncated sets are refused") {
  const Monoid reciprocal(construct_reciprocal());
  const auto z = enumerate_atomized(reciprocal, r("1"), 4);
  const auto lengths = length_set(z);
  CHECK(lengths.lengths == std::vector<Multiplicity>{2, 3, 5, 7});
  CHECK(lengths.completeness == Completeness::UpToTruncation);
  CHECK_THROWS_AS(delta_set(lengths), TruncatedInput);
  CHECK_THROWS_AS(catenary_degree_element(z), TruncatedInput);
}

TEST_CASE("catenary degree of single elements") {
  const Monoid m23 = fg({r("2"), r("3")});
  CHECK(catenary_degree_element(enumerate_fg(m23, r("6"))) == 3);
  const Monoid n = fg({r("5"), r("7"), r("23")});
  CHECK(catenary_degree_element(enumerate_fg(n, r("5"))) == 0);
  CHECK(catenary_degree_element(enumerate_fg(n, r("46"))) == 8);
  CHECK_THROWS_AS(catenary_degree_element(enumerate_fg(n, r("11"))), NotAMember);
}

TEST_CASE("sweep catenary equals explicit chain reconstruction") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::uint64_t> d(2, 15);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    std::vector<PosRational> gens;
    for (int i = 0; i < 3; ++i) gens.emplace_back(d(rng));
    const Monoid m = fg(gens);
    std::vector<mpq_class> atoms;
    for (const auto& a : m.generators()) atoms.push_back(oracle::mpq(a));
    for (std::uint64_t b = 0; b <= 60; ++b) {
      const auto zset = enumerate_fg(m, PosRational(b));
      if (zset.size() == 0 || zset.size() > 50) continue;
      const auto vs = oracle::box_solutions(atoms, b);
      REQUIRE(oracle::dense_all(zset, atoms.size()) == vs);
      CHECK(catenary_degree_element(zset) == oracle::catenary(vs));
      const auto lengths = length_set(zset);
      const auto delta = delta_set(lengths);
      CHECK(delta.empty() == (lengths.lengths.size() <= 1));
      if (!delta.empty()) CHECK(delta.back() <= lengths.lengths.back() - lengths.lengths.front());
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("catenary degree of a monoid") {
  const auto r23 = catenary_degree_monoid_upto(fg({r("2"), r("3")}));
  CHECK(r23.value == 3);
  CHECK(r23.attaining == std::vector<PosRational>{r("6")});

  const auto cyclic = catenary_degree_monoid_upto(fg({r("4")}));
  CHECK(cyclic.value == 0);
  CHECK(cyclic.attaining.empty());

  const Monoid n = fg({r("5"), r("7"), r("17"), r("23")});
  const auto rn = catenary_degree_monoid_upto(n);
  const auto betti = betti_set_fg(n);
  bool meets = false;
  for (const auto& b : rn.attaining) meets = meets || std::binary_search(betti.begin(), betti.end(), b);
  CHECK(meets);
  // Brute maximum over the scan range.
  Multiplicity best = 0;
  const auto& sg = n.scaled_generators();
  for (std::int64_t k = 0; k <= *sg.to_scaled(fg_scan_bound(n)); ++k) {
    const auto vs = oracle::box_solutions({5, 7, 23}, k);
    if (!vs.empty()) best = std::max(best, oracle::catenary(vs));
  }
  CHECK(rn.value == best);
}
