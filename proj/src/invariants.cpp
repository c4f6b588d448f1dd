#include "puiseux/invariants.hpp"

#include <algorithm>
#include <tuple>

#include "puiseux/betti.hpp"
#include "puiseux/error.hpp"
#include "puiseux/union_find.hpp"

namespace puiseux {

namespace {

void require_exact(const FactorizationSet& zset, const char* what) {
  if (!zset.exact()) {
    throw TruncatedInput(std::string(what) + " of " + zset.element().to_string() +
                         " needs the complete factorization set");
  }
}

}  // namespace

LengthSet length_set(const FactorizationSet& zset) {
  std::vector<Multiplicity> lengths;
  lengths.reserve(zset.size());
  for (const auto& z : zset.factorizations()) lengths.push_back(z.length());
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  return {zset.element(), std::move(lengths), zset.completeness()};
}

std::vector<Multiplicity> delta_set(const LengthSet& lengths) {
  if (lengths.completeness != Completeness::Exact) {
    throw TruncatedInput("delta set of " + lengths.element.to_string() +
                         " needs the complete set of lengths");
  }
  std::vector<Multiplicity> gaps;
  for (std::size_t i = 1; i < lengths.lengths.size(); ++i) {
    gaps.push_back(lengths.lengths[i] - lengths.lengths[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  return gaps;
}

Multiplicity catenary_degree(const std::vector<Factorization>& zs) {
  if (zs.size() <= 1) return 0;
  std::vector<std::tuple<Multiplicity, std::size_t, std::size_t>> pairs;
  pairs.reserve(zs.size() * (zs.size() - 1) / 2);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = i + 1; j < zs.size(); ++j) pairs.emplace_back(distance(zs[i], zs[j]), i, j);
  }
  std::sort(pairs.begin(), pairs.end());
  UnionFind uf(zs.size());
  for (const auto& [d, i, j] : pairs) {
    if (uf.unite(i, j) && uf.components() == 1) return d;
  }
  return 0;
}

Multiplicity catenary_degree_element(const FactorizationSet& zset) {
  require_exact(zset, "catenary degree");
  if (zset.size() == 0) throw NotAMember(zset.element().to_string() + " has no factorizations");
  return catenary_degree(zset.factorizations());
}

CatenaryReport catenary_degree_monoid_upto(const Monoid& monoid) {
  CatenaryReport report;
  for (const auto& x : members_up_to(monoid, fg_scan_bound(monoid), 0)) {
    const Multiplicity c = catenary_degree_element(enumerate_fg(monoid, x));
    if (c > report.value) {
      report.value = c;
      report.attaining.clear();
    }
    if (c == report.value && c > 0) report.attaining.push_back(x);
  }
  return report;
}

}  // namespace puiseux
