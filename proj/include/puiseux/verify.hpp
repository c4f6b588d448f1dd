#pragma once

/**
 * @file verify.hpp
 * @brief Property suites runnable from the command line.
 *
 *  - thm42: isolated vertices p_j [q_j / p_j] and the structural
 *    consequences for Betti verdicts (atomized);
 *  - cor43: Betti set equals the base values in the window (atomized, base
 *    certified antimatter and valuation);
 *  - prop21: empty Betti set iff unique factorization;
 *  - lemma41: canonical decompositions of random members round-trip and are
 *    unique against a brute-force search over the window (atomized).
 */

#include <cstdint>
#include <string>
#include <vector>

#include "puiseux/monoid.hpp"

namespace puiseux {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;
};

struct SuiteOptions {
  std::size_t truncation = 8;
  PosRational bound{1};
  std::size_t samples = 500;
  std::uint64_t seed = 20240601;
};

SuiteResult verify_thm42(const Monoid& monoid, const SuiteOptions& options);
SuiteResult verify_cor43(const Monoid& monoid, const SuiteOptions& options);
SuiteResult verify_prop21(const Monoid& monoid, const SuiteOptions& options);
SuiteResult verify_lemma41(const Monoid& monoid, const SuiteOptions& options);

// Throws DomainError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const Monoid& monoid, const SuiteOptions& options);

}  // namespace puiseux
