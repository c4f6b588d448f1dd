#pragma once

/**
 * @file io.hpp
 * @brief Monoid spec files and report rendering (text, JSON, DOT).
 *
 * Spec files are single JSON documents:
 *
 *   {"kind":"finitely_generated","atoms":["5","7","17","23"]}
 *   {"kind":"atomized","index_origin":0,
 *    "base":{"variant":"unit_fraction_geometric","m":2},
 *    "primes":{"variant":"odd_primes_ascending"}}
 *   {"kind":"geometric","q":"3/2"}
 *
 * A finitely generated spec may list "generators" instead of "atoms"; they
 * are reduced to the minimal generating set and the removed ones are kept
 * in FinitelyGeneratedPayload::dropped. A non-minimal "atoms" list is
 * rejected.
 *
 * Other base variants: {"variant":"cyclic_list","values":["1","2"]}.
 * Other prime variants: all_primes_ascending, {"variant":"primes_above","b":3},
 * {"variant":"explicit_list","primes":[3,5,7]}. Unknown keys are rejected.
 */

#include <filesystem>
#include <string>

#include <json.hpp>

#include "puiseux/betti.hpp"
#include "puiseux/factorization.hpp"
#include "puiseux/invariants.hpp"
#include "puiseux/monoid.hpp"

namespace puiseux {

// Throws ValidationError on malformed documents.
MonoidSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const MonoidSpec& spec);
MonoidSpec load_spec(const std::filesystem::path& path);

// Rational value of the atom, or "idx:n" (display index) when ambiguous
// among the given positions.
std::string atom_label(const Monoid& monoid, Position position);
// e.g. "7(1/28)+22(1/88)"; the empty factorization renders as "0".
std::string factorization_string(const Monoid& monoid, const Factorization& z);

nlohmann::json factorizations_json(const Monoid& monoid, const FactorizationSet& zset);
std::string factorizations_text(const Monoid& monoid, const FactorizationSet& zset);

nlohmann::json graph_json(const Monoid& monoid, const BettiGraph& graph);
std::string graph_dot(const Monoid& monoid, const BettiGraph& graph, bool color);

nlohmann::json verdict_json(const Monoid& monoid, const PosRational& q, const BettiVerdict& v);
std::string verdict_text(const Monoid& monoid, const BettiVerdict& v);

nlohmann::json canonical_json(const Monoid& monoid, const PosRational& q,
                              const CanonicalDecomposition& canon);
std::string canonical_text(const Monoid& monoid, const CanonicalDecomposition& canon);

nlohmann::json invariants_json(const FactorizationSet& zset);

nlohmann::json scan_json(const Monoid& monoid, const BettiScanReport& report);
std::string scan_text(const BettiScanReport& report);

std::string join_rationals(const std::vector<PosRational>& xs);

}  // namespace puiseux
