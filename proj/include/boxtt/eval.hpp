#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "boxtt/term.hpp"
#include "boxtt/world.hpp"

namespace boxtt {

inline constexpr std::uint64_t kDefaultFuel = 100'000;

enum class StuckReason : std::uint8_t {
  FreeVariable,
  BadApplication,
  BadScrutinee,
  ReadUnknownName,
  NonNumeralChoiceRead,
};

std::string_view reason_name(StuckReason r);

struct Stepped {
  TermPtr term;
  RefWorld world;
};
struct IsValue {};
struct Stuck {
  StuckReason reason;
};

using StepOutcome = std::variant<Stepped, IsValue, Stuck>;

/// One call-by-name reduction step. Congruence reduces the single boxed
/// position of each construct: application head, let binding, fix body,
/// succ/natrec/spread/decide scrutinee, read target and choose target.
StepOutcome step(const TermPtr& t, const RefWorld& w);

struct Done {
  TermPtr value;
  RefWorld world;
  std::uint64_t steps = 0;
};
struct Timeout {
  TermPtr term;
  RefWorld world;
  std::uint64_t steps = 0;
};
struct StuckAt {
  TermPtr term;
  RefWorld world;
  StuckReason reason;
  std::uint64_t steps = 0;
};

using EvalResult = std::variant<Done, Timeout, StuckAt>;

/// Runs at most `fuel` steps.
EvalResult eval(const TermPtr& t, const RefWorld& w, std::uint64_t fuel = kDefaultFuel);

struct State {
  TermPtr term;
  RefWorld world;
};

struct Trace {
  std::vector<State> states;
  bool exhausted = false;
  std::optional<StuckReason> stuck;

  const State& last() const { return states.back(); }
  std::uint64_t steps() const { return states.empty() ? 0 : states.size() - 1; }
};

/// As eval, keeping every intermediate state; the first state is the input.
Trace eval_trace(const TermPtr& t, const RefWorld& w, std::uint64_t fuel = kDefaultFuel);

EvalResult result_of(const Trace& trace);

/// Meta-level probe standing in for the argument of a functional. Each
/// application of the probe first reduces its argument to a numeral, logs it,
/// then continues as `probe_function` applied to that numeral.
struct ProbeState {
  TermPtr probe_function;
  std::vector<Nat> log;
};

struct ProbeResult {
  EvalResult result;
  std::vector<Nat> log;
};

/// Evaluates F applied to the probe. F and the probe function must be closed.
ProbeResult eval_probe(const TermPtr& functional, ProbeState probe, const RefWorld& w,
                       std::uint64_t fuel = kDefaultFuel);

/// Accessors for EvalResult.
bool is_done(const EvalResult& r);
const Done* as_done(const EvalResult& r);
const Done* as_done(const EvalResult&& r) = delete;
/// The numeral a Done result carries, if any.
std::optional<Nat> numeral_of(const EvalResult& r);
std::uint64_t steps_of(const EvalResult& r);

/// Fuel from BOXTT_FUEL when set and valid, otherwise `fallback`.
std::uint64_t fuel_from_env(std::uint64_t fallback = kDefaultFuel);

}  // namespace boxtt
