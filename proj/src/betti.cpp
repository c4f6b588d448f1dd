#include "puiseux/betti.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "puiseux/error.hpp"
#include "puiseux/union_find.hpp"

namespace puiseux {

namespace {

std::vector<std::vector<std::size_t>> components_of(UnionFind& uf, std::size_t n) {
  std::map<std::size_t, std::size_t> slot_of_root;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = uf.find(v);
    auto [it, inserted] = slot_of_root.emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(v);
  }
  return out;
}

std::vector<PosRational> window_atoms(const Monoid& monoid, const PosRational& bound,
                                      std::size_t truncation) {
  std::vector<PosRational> atoms;
  if (monoid.kind() == MonoidKind::Geometric && monoid.ratio() > PosRational(1)) {
    for (Position pos = 1;; ++pos) {
      PosRational a = monoid.atom(pos);
      if (a > bound) break;
      atoms.push_back(std::move(a));
    }
    return atoms;
  }
  for (const auto& w : atoms_up_to_value(monoid, bound, truncation)) {
    if (!w.exceeds_bound) atoms.push_back(w.value);
  }
  return atoms;
}

std::optional<Factorization> antimatter_witness(const Monoid& monoid, Position j) {
  const auto* ufg = std::get_if<UnitFractionGeometric>(&monoid.atomized().base);
  if (!ufg) return std::nullopt;
  const Position k = j + 1;
  if (auto n = monoid.atom_count(); n && k > *n) return std::nullopt;
  // q_j = m q_{j+1}, and p_{j+1} copies of atom j+1 sum to q_{j+1}.
  return Factorization::single(k, ufg->m * monoid.prime(k));
}

}  // namespace

BettiGraph betti_graph(const FactorizationSet& zset) {
  const auto& vs = zset.factorizations();
  const std::size_t n = vs.size();
  BettiGraph graph{zset, {}, {}};
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (shares_atom(vs[i], vs[j])) {
        graph.edges.emplace_back(i, j);
        uf.unite(i, j);
      }
    }
  }
  graph.components = components_of(uf, n);
  return graph;
}

std::size_t component_count(const std::vector<Factorization>& vertices) {
  UnionFind uf(vertices.size());
  std::map<Position, std::size_t> first_with_atom;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (const auto& [pos, mult] : vertices[v].terms()) {
      auto [it, inserted] = first_with_atom.emplace(pos, v);
      if (!inserted) uf.unite(it->second, v);
    }
  }
  return uf.components();
}

bool is_betti_fg(const Monoid& monoid, const PosRational& b) {
  return !betti_graph(enumerate_fg(monoid, b)).connected();
}

namespace {

struct FgScan {
  std::int64_t gcd;
  std::int64_t limit;  // in units of gcd
};

FgScan fg_scan(const Monoid& monoid) {
  const auto& ks = monoid.scaled_generators().knapsack();
  const std::int64_t g = ks.gcd();
  const std::int64_t max_gen = *std::max_element(ks.generators().begin(), ks.generators().end());
  return {g, ks.frobenius() + 2 * (max_gen / g)};
}

}  // namespace

PosRational fg_scan_bound(const Monoid& monoid) {
  const auto scan = fg_scan(monoid);
  return monoid.scaled_generators().from_scaled(scan.limit * scan.gcd);
}

std::vector<PosRational> betti_set_fg(const Monoid& monoid) {
  const auto& scaled = monoid.scaled_generators();
  const auto& ks = scaled.knapsack();
  const auto scan = fg_scan(monoid);
  std::vector<PosRational> out;
  for (std::int64_t n = 1; n <= scan.limit; ++n) {
    const std::int64_t x = n * scan.gcd;
    if (!ks.contains(x)) continue;
    std::vector<Factorization> vertices;
    for (const auto& coeffs : ks.solutions(x)) {
      std::vector<Factorization::Term> terms;
      for (std::size_t i = 0; i < coeffs.size(); ++i) terms.emplace_back(i + 1, coeffs[i]);
      vertices.emplace_back(std::move(terms));
    }
    if (component_count(vertices) >= 2) out.push_back(scaled.from_scaled(x));
  }
  return out;
}

std::vector<PosRational> betti_set_fg_atomgraph_oracle(const Monoid& monoid) {
  const auto& scaled = monoid.scaled_generators();
  const auto& gens = scaled.knapsack().generators();
  const auto scan = fg_scan(monoid);
  std::vector<std::int64_t> reduced;
  for (auto a : gens) reduced.push_back(a / scan.gcd);

  std::vector<bool> reach(static_cast<std::size_t>(scan.limit) + 1, false);
  reach[0] = true;
  for (std::int64_t n = 1; n <= scan.limit; ++n) {
    for (auto a : reduced) {
      if (n >= a && reach[static_cast<std::size_t>(n - a)]) {
        reach[static_cast<std::size_t>(n)] = true;
        break;
      }
    }
  }
  auto in_s = [&](std::int64_t x) { return x >= 0 && reach[static_cast<std::size_t>(x)]; };

  std::vector<PosRational> out;
  const std::size_t k = reduced.size();
  for (std::int64_t n = 1; n <= scan.limit; ++n) {
    if (!in_s(n)) continue;
    std::vector<std::size_t> vertices;
    for (std::size_t i = 0; i < k; ++i) {
      if (in_s(n - reduced[i])) vertices.push_back(i);
    }
    UnionFind uf(vertices.size());
    for (std::size_t a = 0; a < vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        if (in_s(n - reduced[vertices[a]] - reduced[vertices[b]])) uf.unite(a, b);
      }
    }
    if (uf.components() >= 2) out.push_back(scaled.from_scaled(n * scan.gcd));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Betti: return "Betti";
    case Verdict::NotBetti: return "NotBetti";
    case Verdict::Unknown: break;
  }
  return "Unknown";
}

BettiVerdict classify_atomized(const Monoid& monoid, const PosRational& q, std::size_t truncation) {
  const auto canon = canonical_decomposition(monoid, q);
  if (!canon) throw NotAMember(q.to_string() + " is not an element of the monoid");
  if (q.is_zero()) return {Verdict::NotBetti, truncation, SingleFactorization{1}};

  if (!canon->fractional.empty()) {
    const Position pos = canon->fractional.front().first;
    const std::uint64_t p = monoid.prime(pos);
    return {Verdict::NotBetti, truncation, ForcedAtom{pos, p, valuation(q, p).value}};
  }

  const auto j = base_position_of_value(monoid, q);
  if (j) {
    const std::uint64_t pj = monoid.prime(*j);
    const Factorization isolated = Factorization::single(*j, pj);
    std::optional<Factorization> other = antimatter_witness(monoid, *j);
    if (!other) {
      if (const auto k = next_position_with_same_value(monoid, *j)) {
        other = Factorization::single(*k, monoid.prime(*k));
      }
    }
    if (!other) {
      const auto zset = enumerate_atomized(monoid, q, truncation);
      for (const auto& z : zset.factorizations()) {
        if (z != isolated) {
          other = z;
          break;
        }
      }
    }
    if (other) {
      return {Verdict::Betti, truncation,
              DisconnectedWitness{isolated, *other, IsolationProof{*j, pj, q}}};
    }
  } else if (base_properties(monoid).valuation == Tristate::True) {
    return {Verdict::NotBetti, truncation, ValuationPath{q}};
  }

  const auto zset = enumerate_atomized(monoid, q, truncation);
  const auto& vs = zset.factorizations();
  if (zset.exact() && vs.size() <= 1) {
    return {Verdict::NotBetti, truncation, SingleFactorization{vs.size()}};
  }
  if (zset.exact()) {
    const auto graph = betti_graph(zset);
    if (!graph.connected()) {
      return {Verdict::Betti, truncation,
              DisconnectedWitness{vs[graph.components[0].front()], vs[graph.components[1].front()],
                                  std::nullopt}};
    }
  }
  return {Verdict::Unknown, truncation,
          TruncationOnly{zset.truncation(), vs.size(), component_count(vs)}};
}

bool check_isolation(const Monoid& monoid, const PosRational& q, const IsolationProof& proof) {
  if (monoid.prime(proof.position) != proof.prime) return false;
  if (monoid.base_value(proof.position) != proof.base_value || proof.base_value != q) return false;
  // v_p(q) = 0 forces p | c in every factorization ...
  if (valuation(q, proof.prime) != Valuation::of(0)) return false;
  // ... and a single block of p copies is all of q.
  return monoid.atom(proof.position).mul_nat(to_integer(proof.prime)) == q;
}

bool check_certificate(const Monoid& monoid, const PosRational& q, const BettiVerdict& verdict) {
  return std::visit(
      [&](const auto& cert) -> bool {
        using C = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<C, DisconnectedWitness>) {
          if (verdict.verdict != Verdict::Betti) return false;
          if (evaluate(monoid, cert.isolated) != q || evaluate(monoid, cert.other) != q) return false;
          if (cert.isolated == cert.other || shares_atom(cert.isolated, cert.other)) return false;
          if (cert.proof) {
            return check_isolation(monoid, q, *cert.proof) &&
                   cert.isolated == Factorization::single(cert.proof->position, cert.proof->prime);
          }
          const auto zset = enumerate_atomized(monoid, q, verdict.truncation);
          if (!zset.exact()) return false;
          const auto graph = betti_graph(zset);
          const auto& vs = zset.factorizations();
          auto index_of = [&](const Factorization& z) {
            return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), z) - vs.begin());
          };
          for (const auto& comp : graph.components) {
            const bool has_a = std::binary_search(comp.begin(), comp.end(), index_of(cert.isolated));
            const bool has_b = std::binary_search(comp.begin(), comp.end(), index_of(cert.other));
            if (has_a && has_b) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<C, ForcedAtom>) {
          return verdict.verdict == Verdict::NotBetti && monoid.prime(cert.position) == cert.prime &&
                 cert.valuation < 0 && valuation(q, cert.prime) == Valuation::of(cert.valuation);
        } else if constexpr (std::is_same_v<C, SingleFactorization>) {
          if (verdict.verdict != Verdict::NotBetti || cert.count > 1) return false;
          const auto zset = enumerate_atomized(monoid, q, verdict.truncation);
          return zset.exact() && zset.size() == cert.count;
        } else if constexpr (std::is_same_v<C, ValuationPath>) {
          return verdict.verdict == Verdict::NotBetti && cert.element == q && !q.is_zero() &&
                 base_properties(monoid).valuation == Tristate::True && base_member(monoid, q) &&
                 !base_position_of_value(monoid, q);
        } else {
          return verdict.verdict == Verdict::Unknown;
        }
      },
      verdict.certificate);
}

std::vector<PosRational> atomized_candidates(const Monoid& monoid, const PosRational& bound,
                                             std::size_t truncation) {
  std::vector<PosRational> out;
  if (const auto* base = monoid.cyclic_base()) {
    const Integer top = floor_div(bound.mul_nat(base->scale()), PosRational(1));
    const std::int64_t limit = top.fits_slong_p() ? top.get_si() : 0;
    for (std::int64_t k = 1; k <= limit; ++k) {
      if (base->knapsack().contains(k)) out.push_back(base->from_scaled(k));
    }
  } else {
    const auto& ufg = std::get<UnitFractionGeometric>(monoid.atomized().base);
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), to_integer(ufg.m).get_mpz_t(), truncation);
    const Integer top = floor_div(bound.mul_nat(den), PosRational(1));
    for (Integer k = 1; k <= top; ++k) out.emplace_back(k, den);
  }
  return out;
}

BettiScanReport betti_scan_atomized(const Monoid& monoid, const PosRational& bound,
                                    std::size_t truncation) {
  BettiScanReport report{bound, truncation, base_properties(monoid), {}, {}, {}, {}, {}, {}};
  for (const auto& q : atomized_candidates(monoid, bound, truncation)) {
    if (base_position_of_value(monoid, q)) report.base_values.push_back(q);
    BettiVerdict v = classify_atomized(monoid, q, truncation);
    switch (v.verdict) {
      case Verdict::Betti: report.betti.push_back(q); break;
      case Verdict::NotBetti: report.not_betti.push_back(q); break;
      case Verdict::Unknown: report.unknown.push_back(q); break;
    }
    report.entries.push_back({q, std::move(v)});
  }
  if (report.properties.antimatter == Tristate::True &&
      report.properties.valuation == Tristate::True) {
    report.betti_matches_base_values = report.betti == report.base_values && report.unknown.empty();
  }
  return report;
}

std::vector<PosRational> members_up_to(const Monoid& monoid, const PosRational& bound,
                                       std::size_t truncation) {
  std::vector<PosRational> out;
  if (monoid.kind() == MonoidKind::FinitelyGenerated) {
    const auto& scaled = monoid.scaled_generators();
    const Integer top = floor_div(bound.mul_nat(scaled.scale()), PosRational(1));
    const std::int64_t limit = top.fits_slong_p() ? top.get_si() : 0;
    for (std::int64_t k = 1; k <= limit; ++k) {
      if (scaled.knapsack().contains(k)) out.push_back(scaled.from_scaled(k));
    }
    return out;
  }
  const auto atoms = window_atoms(monoid, bound, truncation);
  std::set<PosRational> seen;
  std::vector<PosRational> frontier{PosRational()};
  while (!frontier.empty()) {
    std::vector<PosRational> next;
    for (const auto& x : frontier) {
      for (const auto& a : atoms) {
        PosRational y = x + a;
        if (y <= bound && seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<PosRational> betti_set_geometric(const Monoid& monoid, const PosRational& bound) {
  if (monoid.ratio() < PosRational(1)) {
    throw DomainError("exact Betti scan needs a geometric ratio above 1");
  }
  std::vector<PosRational> out;
  for (const auto& x : members_up_to(monoid, bound, 0)) {
    const auto zset = enumerate_geometric(monoid, x, 0);
    if (component_count(zset.factorizations()) >= 2) out.push_back(x);
  }
  return out;
}

bool is_uufm_upto(const Monoid& monoid, const PosRational& bound, std::size_t truncation) {
  for (const auto& x : members_up_to(monoid, bound, truncation)) {
    if (enumerate(monoid, x, truncation).size() > 1) return false;
  }
  return true;
}

}  // namespace puiseux
