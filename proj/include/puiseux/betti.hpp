#pragma once

/**
 * @file betti.hpp
 * @brief Betti graphs and Betti elements.
 *
 * The Betti graph of b has the factorizations of b as vertices and joins two
 * of them when they share an atom; b is a Betti element when the graph is
 * disconnected.
 *
 * Finitely generated monoids are handled exactly. After scaling to a
 * semigroup S of N0 with generators A and Frobenius number F, every
 * n > F + 2 max(A) has a connected graph: for factorizations z containing
 * a_i and z' containing a_j, n - a_i - a_j > F lies in S, and any of its
 * factorizations plus a_i + a_j is a common neighbour of z and z'. The
 * scan over S \cap [0, F + 2 max(A)] is therefore exhaustive.
 *
 * Atomized monoids can have infinitely many factorizations per element, so
 * their verdicts are three-valued and every exact claim carries a
 * certificate grounded in a valuation argument or a structural property of
 * the base monoid N = <q_n>.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "puiseux/factorization.hpp"
#include "puiseux/monoid.hpp"

namespace puiseux {

struct BettiGraph {
  FactorizationSet vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // Components as sorted vertex-index lists, ordered by smallest member.
  std::vector<std::vector<std::size_t>> components;

  const PosRational& element() const { return vertices.element(); }
  bool connected() const { return components.size() <= 1; }
};

BettiGraph betti_graph(const FactorizationSet& zset);

// Number of components without materializing edges: factorizations that
// use the same atom are merged atom by atom.
std::size_t component_count(const std::vector<Factorization>& vertices);

bool is_betti_fg(const Monoid& monoid, const PosRational& b);

// Largest element the exhaustive finitely generated scan has to visit.
PosRational fg_scan_bound(const Monoid& monoid);

std::vector<PosRational> betti_set_fg(const Monoid& monoid);

// Independent route that never enumerates factorizations: b is Betti iff
// the graph on {a_i : b - a_i in S} with edges {a_i, a_j} whenever
// b - a_i - a_j in S is disconnected. Membership comes from a plain
// reachability sieve rather than Apery tables.
std::vector<PosRational> betti_set_fg_atomgraph_oracle(const Monoid& monoid);

// --- Atomized verdicts -----------------------------------------------------

enum class Verdict { Betti, NotBetti, Unknown };
std::string to_string(Verdict v);

// Recheckable reason why p_j copies of atom j form an isolated vertex of
// the graph of q_j: v_{p_j}(q_j) = 0 forces p_j | c_j in every
// factorization, and p_j copies already exhaust q_j.
struct IsolationProof {
  Position position;
  std::uint64_t prime;
  PosRational base_value;
};

struct DisconnectedWitness {
  Factorization isolated;
  Factorization other;
  // Empty when disconnection was read off an exact enumeration.
  std::optional<IsolationProof> proof;
};

// v_{p_n}(q) < 0, so every factorization contains atom n.
struct ForcedAtom {
  Position position;
  std::uint64_t prime;
  std::int64_t valuation;
};

struct SingleFactorization {
  std::size_t count;
};

// N is a valuation monoid, q is in N and differs from every q_n.
struct ValuationPath {
  PosRational element;
};

struct TruncationOnly {
  std::size_t truncation;
  std::size_t vertices;
  std::size_t components;
};

using Certificate =
    std::variant<DisconnectedWitness, ForcedAtom, SingleFactorization, ValuationPath, TruncationOnly>;

struct BettiVerdict {
  Verdict verdict;
  std::size_t truncation;
  Certificate certificate;
};

// Throws NotAMember for q outside the monoid.
BettiVerdict classify_atomized(const Monoid& monoid, const PosRational& q, std::size_t truncation);

// Re-derives every claim of a certificate from scratch.
bool check_certificate(const Monoid& monoid, const PosRational& q, const BettiVerdict& verdict);

bool check_isolation(const Monoid& monoid, const PosRational& q, const IsolationProof& proof);

struct ScanEntry {
  PosRational element;
  BettiVerdict verdict;
};

struct BettiScanReport {
  PosRational bound;
  std::size_t truncation;
  BaseProperties properties;
  std::vector<ScanEntry> entries;
  std::vector<PosRational> betti;
  std::vector<PosRational> not_betti;
  std::vector<PosRational> unknown;
  // Base values q_n <= bound inside the scan window.
  std::vector<PosRational> base_values;
  // Set when N is certified antimatter and valuation: whether the Betti
  // part of the scan is exactly base_values.
  std::optional<bool> betti_matches_base_values;
};

// Candidates are the elements of N up to bound (for unit-fraction bases,
// those with denominator dividing m^truncation) plus the base values.
std::vector<PosRational> atomized_candidates(const Monoid& monoid, const PosRational& bound,
                                             std::size_t truncation);

BettiScanReport betti_scan_atomized(const Monoid& monoid, const PosRational& bound,
                                    std::size_t truncation);

// Exact for ratios above 1; throws DomainError otherwise.
std::vector<PosRational> betti_set_geometric(const Monoid& monoid, const PosRational& bound);

// Nonzero elements that are sums of atoms in the window and do not exceed
// bound, ascending.
std::vector<PosRational> members_up_to(const Monoid& monoid, const PosRational& bound,
                                       std::size_t truncation);

// Whether every nonzero element up to bound has at most one factorization
// (supported on the window for infinitely generated monoids).
bool is_uufm_upto(const Monoid& monoid, const PosRational& bound, std::size_t truncation);

}  // namespace puiseux
