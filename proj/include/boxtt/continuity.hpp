#pragma once

#include <optional>
#include <string>
#include <variant>

#include "boxtt/eval.hpp"
#include "boxtt/term.hpp"
#include "boxtt/world.hpp"

namespace boxtt {

/// λx. let y = x in (seq (iflt !k y (k := y) ⋆) (alpha y))
///
/// Behaves as alpha, but forces its argument and records in cell k the
/// largest argument seen so far.
TermPtr mk_upd(const TermPtr& k, const TermPtr& alpha);
TermPtr mk_upd(ChoiceName k, const TermPtr& alpha);

/// fresh x. seq (x := 0) (seq (F (upd x alpha)) (succ !x))
TermPtr mk_mod(const TermPtr& functional, const TermPtr& alpha);

/// λx. let y = x in (f y): call-by-value wrapper.
TermPtr mk_force(const TermPtr& f);

/// λF. λα. ⟨mod(F, α), λβ. λe. ⋆⟩
TermPtr mk_cont_realizer();

struct ModulusReport {
  Nat modulus;
  std::uint64_t fuel_used = 0;
  RefWorld final_world;
  std::optional<Trace> trace;
  ChoiceName fresh_name;
};

enum class ModulusFailure { PurityViolation, NonNumeralResult, Timeout, Stuck };

std::string_view failure_name(ModulusFailure f);

struct ModulusError {
  ModulusFailure kind;
  std::string detail;
  std::optional<EvalResult> result;
};

using ModulusResult = std::variant<ModulusReport, ModulusError>;

/// Evaluates mod(F, α) from w. F and α must be closed and name-free.
ModulusResult compute_modulus(const TermPtr& functional, const TermPtr& alpha, const RefWorld& w,
                              std::uint64_t fuel = kDefaultFuel, bool keep_trace = false);

/// Independent route: 1 + the largest argument the probe sees while F runs
/// against it (1 when α is never applied).
struct OracleResult {
  std::optional<Nat> modulus;
  std::vector<Nat> log;
  EvalResult result;
};
OracleResult oracle_modulus(const TermPtr& functional, const TermPtr& alpha, const RefWorld& w,
                            std::uint64_t fuel = kDefaultFuel);

}  // namespace boxtt
