#include "puiseux/verify.hpp"

#include <algorithm>
#include <random>

#include "puiseux/betti.hpp"
#include "puiseux/error.hpp"
#include "puiseux/factorization.hpp"
#include "puiseux/io.hpp"

namespace puiseux {

namespace {

void require_atomized(const Monoid& monoid, const std::string& suite) {
  if (monoid.kind() != MonoidKind::Atomized) {
    throw DomainError("suite " + suite + " needs an atomized monoid");
  }
}

void record(SuiteResult& result, bool ok, const std::string& line) {
  result.passed = result.passed && ok;
  result.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + line);
}

// Every c in prod [0, p_n - 1] over the window with q - sum c_n a_n in N.
void brute_decompositions(const Monoid& monoid, const std::vector<Position>& window, std::size_t i,
                          const PosRational& rest, std::vector<Multiplicity>& cs,
                          std::vector<std::vector<Multiplicity>>& out) {
  if (i == window.size()) {
    if (base_member(monoid, rest)) out.push_back(cs);
    return;
  }
  const PosRational a = monoid.atom(window[i]);
  const std::uint64_t p = monoid.prime(window[i]);
  PosRational spent{0};
  for (std::uint64_t c = 0; c < p; ++c) {
    const auto remaining = sub_checked(rest, spent);
    if (!remaining) break;
    cs[i] = c;
    brute_decompositions(monoid, window, i + 1, *remaining, cs, out);
    spent += a;
  }
  cs[i] = 0;
}

}  // namespace

SuiteResult verify_thm42(const Monoid& monoid, const SuiteOptions& options) {
  require_atomized(monoid, "thm42");
  SuiteResult result{"thm42", true, {}};
  const std::size_t T = options.truncation;
  const BaseProperties props = base_properties(monoid);
  const std::size_t last = std::min<std::size_t>(8, T);
  for (Position j = 1; j <= last; ++j) {
    const PosRational qj = monoid.base_value(j);
    const std::uint64_t pj = monoid.prime(j);
    const Factorization vertex = Factorization::single(j, pj);
    const auto zset = enumerate_atomized(monoid, qj, T);
    const auto& vs = zset.factorizations();
    const bool present = std::binary_search(vs.begin(), vs.end(), vertex);
    const bool isolated = std::none_of(vs.begin(), vs.end(), [&](const Factorization& z) {
      return z != vertex && shares_atom(z, vertex);
    });
    const bool proof = check_isolation(monoid, qj, IsolationProof{j, pj, qj});
    record(result, present && isolated && proof,
           "j=" + std::to_string(monoid.display_index(j)) + " q_j=" + qj.to_string() + ": vertex " +
               factorization_string(monoid, vertex) + " has degree 0 among " +
               std::to_string(vs.size()) + " vertices (T=" + std::to_string(T) +
               "), valuation proof " + (proof ? "checks" : "fails"));
    if (props.antimatter == Tristate::True) {
      const auto verdict = classify_atomized(monoid, qj, T);
      record(result, verdict.verdict == Verdict::Betti && check_certificate(monoid, qj, verdict),
             "antimatter base: q_j=" + qj.to_string() + " is " + verdict_text(monoid, verdict));
    }
  }

  const auto report = betti_scan_atomized(monoid, options.bound, T);
  for (const auto& entry : report.entries) {
    const auto& q = entry.element;
    const auto& v = entry.verdict;
    if (!check_certificate(monoid, q, v)) {
      record(result, false, "certificate of " + q.to_string() + " does not check");
    }
    if (v.verdict != Verdict::Betti) continue;
    const auto canon = canonical_decomposition(monoid, q);
    const bool in_base = canon && canon->fractional.empty() && base_member(monoid, canon->n_q);
    record(result, in_base, "Betti element " + q.to_string() + " lies in N");
    if (props.valuation == Tristate::True) {
      record(result, base_position_of_value(monoid, q).has_value(),
             "valuation base: Betti element " + q.to_string() + " is a base value");
    }
  }
  record(result, true,
         "scan up to " + options.bound.to_string() + ": " + std::to_string(report.entries.size()) +
             " candidates, Betti {" + join_rationals(report.betti) + "}");
  return result;
}

SuiteResult verify_cor43(const Monoid& monoid, const SuiteOptions& options) {
  require_atomized(monoid, "cor43");
  SuiteResult result{"cor43", true, {}};
  const BaseProperties props = base_properties(monoid);
  if (props.antimatter != Tristate::True || props.valuation != Tristate::True) {
    record(result, false,
           "base monoid not certified antimatter and valuation (antimatter=" +
               to_string(props.antimatter) + ", valuation=" + to_string(props.valuation) + ")");
    return result;
  }
  const auto report = betti_scan_atomized(monoid, options.bound, options.truncation);
  for (const auto& entry : report.entries) {
    const bool is_base = base_position_of_value(monoid, entry.element).has_value();
    const bool expected = entry.verdict.verdict == (is_base ? Verdict::Betti : Verdict::NotBetti);
    const bool checks = check_certificate(monoid, entry.element, entry.verdict);
    if (!expected || !checks) {
      record(result, false, entry.element.to_string() + ": " + verdict_text(monoid, entry.verdict));
    }
  }
  record(result, report.betti_matches_base_values.value_or(false),
         "Betti {" + join_rationals(report.betti) + "} = base values {" +
             join_rationals(report.base_values) + "} up to " + options.bound.to_string() +
             " (T=" + std::to_string(options.truncation) + ")");
  return result;
}

SuiteResult verify_prop21(const Monoid& monoid, const SuiteOptions& options) {
  SuiteResult result{"prop21", true, {}};
  switch (monoid.kind()) {
    case MonoidKind::FinitelyGenerated: {
      const auto betti = betti_set_fg(monoid);
      const bool cyclic = monoid.generators().size() == 1;
      const bool uufm = is_uufm_upto(monoid, fg_scan_bound(monoid), options.truncation);
      record(result, betti.empty() == cyclic && betti.empty() == uufm,
             "Betti {" + join_rationals(betti) + "}, " + std::to_string(monoid.generators().size()) +
                 " minimal generators, U-UFM=" + (uufm ? "yes" : "no"));
      break;
    }
    case MonoidKind::Geometric: {
      if (monoid.ratio() < PosRational(1)) throw DomainError("prop21 needs a ratio above 1");
      const auto betti = betti_set_geometric(monoid, options.bound);
      const bool uufm = is_uufm_upto(monoid, options.bound, options.truncation);
      record(result, betti.empty() == uufm,
             "Betti up to " + options.bound.to_string() + " {" + join_rationals(betti) +
                 "}, U-UFM up to bound=" + (uufm ? "yes" : "no"));
      break;
    }
    case MonoidKind::Atomized: {
      // Only Betti => not U-UFM is exact here: every Betti certificate
      // exhibits two distinct factorizations.
      const auto report = betti_scan_atomized(monoid, options.bound, options.truncation);
      for (const auto& entry : report.entries) {
        if (entry.verdict.verdict != Verdict::Betti) continue;
        const auto& w = std::get<DisconnectedWitness>(entry.verdict.certificate);
        record(result,
               w.isolated != w.other && evaluate(monoid, w.isolated) == entry.element &&
                   evaluate(monoid, w.other) == entry.element,
               entry.element.to_string() + " has factorizations " +
                   factorization_string(monoid, w.isolated) + " and " +
                   factorization_string(monoid, w.other));
      }
      if (report.betti.empty()) record(result, true, "no Betti element certified in the window");
      break;
    }
  }
  return result;
}

SuiteResult verify_lemma41(const Monoid& monoid, const SuiteOptions& options) {
  require_atomized(monoid, "lemma41");
  SuiteResult result{"lemma41", true, {}};
  const std::size_t T = options.truncation;
  std::vector<Position> window;
  for (Position n = 1; n <= T; ++n) window.push_back(n);

  std::mt19937_64 rng(options.seed);
  std::size_t failures = 0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    // A random member supported on the window.
    PosRational q{0};
    std::vector<std::pair<Position, Multiplicity>> drawn;
    for (Position n : window) {
      std::uniform_int_distribution<std::uint64_t> dist(0, 2 * monoid.prime(n));
      const std::uint64_t c = dist(rng) % 3 == 0 ? dist(rng) : 0;
      q += monoid.atom(n).mul_nat(to_integer(c));
    }
    const auto canon = canonical_decomposition(monoid, q);
    bool ok = canon.has_value() && canon->reassemble(monoid) == q;
    if (ok) {
      for (const auto& [pos, c] : canon->fractional) {
        ok = ok && c >= 1 && c < monoid.prime(pos) && pos <= T;
      }
    }
    std::vector<std::vector<Multiplicity>> found;
    std::vector<Multiplicity> cs(window.size(), 0);
    brute_decompositions(monoid, window, 0, q, cs, found);
    if (ok) {
      std::vector<Multiplicity> expected(window.size(), 0);
      for (const auto& [pos, c] : canon->fractional) expected[pos - 1] = c;
      ok = found.size() == 1 && found.front() == expected;
    }
    if (!ok) {
      ++failures;
      record(result, false,
             "q=" + q.to_string() + ": " + (canon ? canonical_text(monoid, *canon) : "no decomposition") +
                 ", brute force found " + std::to_string(found.size()));
    }
  }
  record(result, failures == 0,
         std::to_string(options.samples - failures) + "/" + std::to_string(options.samples) +
             " random members round-trip with a unique decomposition (T=" + std::to_string(T) +
             ", seed " + std::to_string(options.seed) + ")");
  return result;
}

SuiteResult run_suite(const std::string& name, const Monoid& monoid, const SuiteOptions& options) {
  if (name == "thm42") return verify_thm42(monoid, options);
  if (name == "cor43") return verify_cor43(monoid, options);
  if (name == "prop21") return verify_prop21(monoid, options);
  if (name == "lemma41") return verify_lemma41(monoid, options);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace puiseux
