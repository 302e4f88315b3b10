#pragma once

#include <cstdint>
#include <vector>

#include "boxtt/eval.hpp"
#include "boxtt/term.hpp"
#include "boxtt/world.hpp"

namespace boxtt {

inline constexpr std::size_t kDefaultGenSize = 6;

/// Closed, name-free λn-term that is total on numerals: built from n,
/// small numerals, succ, pred, sub, bounded natrec and iflt.
TermPtr gen_alpha(std::uint64_t seed, std::size_t size = kDefaultGenSize);

/// Closed, name-free λα-term that applies α to numerals and to results of
/// earlier applications, mixed with arithmetic, natrec, iflt and let. Total
/// whenever α is total on numerals.
TermPtr gen_F(std::uint64_t seed, std::size_t size = kDefaultGenSize);

/// Name-free β with β(i) = α(i) for i < n and β(n) ≠ α(n): α patched above
/// the threshold. Evaluates α(n) when the patch is a constant.
TermPtr gen_beta_agreeing(const TermPtr& alpha, const Nat& n, std::uint64_t seed,
                          std::uint64_t fuel = kDefaultFuel);

/// Small random world: up to four cells with distinct names.
RefWorld gen_world(std::uint64_t seed);

/// Arbitrary term over the whole grammar (names, fresh, types included).
/// Not meant to evaluate; used for syntax-level properties.
TermPtr gen_term(std::uint64_t seed, std::size_t size);

/// One generated continuity instance.
struct CaseSpec {
  TermPtr functional;
  TermPtr alpha;
  RefWorld world;
  std::uint64_t seed = 0;
  std::uint64_t fuel = kDefaultFuel;
};

CaseSpec gen_case(std::uint64_t seed, std::uint64_t fuel = kDefaultFuel,
                  std::size_t size = kDefaultGenSize);
std::vector<CaseSpec> gen_cases(std::size_t count, std::uint64_t seed,
                                std::uint64_t fuel = kDefaultFuel,
                                std::size_t size = kDefaultGenSize);

}  // namespace boxtt
