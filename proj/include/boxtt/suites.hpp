#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxtt/generators.hpp"
#include "boxtt/world.hpp"

namespace boxtt {

struct SuiteParams {
  std::size_t cases = 500;
  std::uint64_t seed = 42;
  std::uint64_t fuel = kDefaultFuel;
  std::size_t betas = 10;
  SamplingParams sampling{4, 16, 0};
  std::size_t gen_size = kDefaultGenSize;
  /// Random (world, name, choice) triples for the Ref assumption checks.
  std::size_t assumption_trials = 1000;
  /// Bound on the continuity suite's lockstep similarity check.
  std::size_t lockstep_steps = 100;
};

struct Failure {
  std::size_t case_index = 0;
  std::uint64_t seed = 0;
  std::optional<CaseSpec> inputs;
  std::string expected;
  std::string actual;
  std::string message;
};

struct SuiteReport {
  std::string suite;
  std::size_t cases_run = 0;
  std::vector<Failure> failures;
  /// Deterministic counters (e.g. lockstep statistics), in insertion order.
  std::vector<std::pair<std::string, std::uint64_t>> stats;
  double wall_ms = 0;

  bool passed() const { return failures.empty(); }
};

/// Per case: mod(F, α) computes a numeral that equals the oracle and is the
/// same from every sampled extension of the case world.
SuiteReport check_modulus_suite(const std::vector<CaseSpec>& cases, const SamplingParams& sampling);

/// Per case: along the mod(F, α) trace the recording cell never exceeds
/// modulus − 1 and ends at exactly modulus − 1.
SuiteReport check_highest_suite(const std::vector<CaseSpec>& cases);

/// Per case and per generated β agreeing with α below the modulus:
/// F α, F β and F (force β) compute the same numeral, as does F (upd κ α).
SuiteReport check_continuity_suite(const std::vector<CaseSpec>& cases, std::size_t betas,
                                   std::size_t lockstep_steps = 100);

/// Per case: every trace (mod, F α, F (upd κ α)) is a ⊑-chain.
SuiteReport check_extension_suite(const std::vector<CaseSpec>& cases);

/// The impure argument that tells α and upd(κ, α) apart.
SuiteReport check_purity_counterexample();

/// Effect-type membership examples, plus purity of generated F α.
SuiteReport check_membership_suite(const std::vector<CaseSpec>& cases,
                                   const SamplingParams& sampling);

/// Read-after-write and numeral-valued reads for the reference instance.
SuiteReport check_assumptions_suite(std::size_t trials, std::uint64_t seed,
                                    const SamplingParams& sampling);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "modulus",    "highest",    "continuity",  "extension",
      "purity-counterexample", "membership", "assumptions"};
  return names;
}

bool known_suite(const std::string& name);

/// Runs one named suite, or every suite for "all". When `replay` is given,
/// those cases are used instead of generated ones.
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteParams& params,
                                    const std::optional<std::vector<CaseSpec>>& replay = std::nullopt);

}  // namespace boxtt
