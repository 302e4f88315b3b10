#include "boxtt/continuity.hpp"

#include <algorithm>

#include "boxtt/sugar.hpp"

namespace boxtt {

TermPtr mk_upd(const TermPtr& k, const TermPtr& alpha) {
  std::vector<std::string> avoid = k->free_vars();
  avoid.insert(avoid.end(), alpha->free_vars().begin(), alpha->free_vars().end());
  const std::string x = fresh_var("x", avoid);
  avoid.push_back(x);
  const std::string y = fresh_var("y", avoid);
  TermPtr record = iflt(read(k), var(y), choose(k, var(y)), star());
  return lam(x, let(y, var(x), seq(std::move(record), app(alpha, var(y)))));
}

TermPtr mk_upd(ChoiceName k, const TermPtr& alpha) { return mk_upd(name(k), alpha); }

TermPtr mk_mod(const TermPtr& functional, const TermPtr& alpha) {
  std::vector<std::string> avoid = functional->free_vars();
  avoid.insert(avoid.end(), alpha->free_vars().begin(), alpha->free_vars().end());
  const std::string k = fresh_var("k", avoid);
  TermPtr probe = app(functional, mk_upd(var(k), alpha));
  return fresh(k, seq(choose(var(k), num(0)), seq(std::move(probe), succ(read(var(k))))));
}

TermPtr mk_force(const TermPtr& f) {
  std::vector<std::string> avoid = f->free_vars();
  const std::string x = fresh_var("x", avoid);
  avoid.push_back(x);
  const std::string y = fresh_var("y", avoid);
  return lam(x, let(y, var(x), app(f, var(y))));
}

TermPtr mk_cont_realizer() {
  TermPtr witness = lam("beta", lam("e", star()));
  return lam("F", lam("alpha", pair(mk_mod(var("F"), var("alpha")), std::move(witness))));
}

std::string_view failure_name(ModulusFailure f) {
  switch (f) {
    case ModulusFailure::PurityViolation: return "PurityViolation";
    case ModulusFailure::NonNumeralResult: return "NonNumeralResult";
    case ModulusFailure::Timeout: return "Timeout";
    case ModulusFailure::Stuck: return "Stuck";
  }
  return "?";
}

ModulusResult compute_modulus(const TermPtr& functional, const TermPtr& alpha, const RefWorld& w,
                              std::uint64_t fuel, bool keep_trace) {
  if (!nonames(functional)) {
    return ModulusError{ModulusFailure::PurityViolation, "functional contains a name or fresh",
                        std::nullopt};
  }
  if (!nonames(alpha)) {
    return ModulusError{ModulusFailure::PurityViolation, "argument contains a name or fresh",
                        std::nullopt};
  }
  const TermPtr term = mk_mod(functional, alpha);
  // The first step is the fresh step, which allocates new_choice(w).
  const ChoiceName k = new_choice(w);

  std::optional<Trace> trace;
  EvalResult result = Timeout{term, w, 0};
  if (keep_trace) {
    trace = eval_trace(term, w, fuel);
    result = result_of(*trace);
  } else {
    result = eval(term, w, fuel);
  }

  if (std::holds_alternative<Timeout>(result)) {
    return ModulusError{ModulusFailure::Timeout, "fuel exhausted", std::move(result)};
  }
  if (const auto* s = std::get_if<StuckAt>(&result)) {
    return ModulusError{ModulusFailure::Stuck, std::string(reason_name(s->reason)),
                        std::move(result)};
  }
  const Done& done = std::get<Done>(result);
  if (done.value->kind() != Kind::Num) {
    return ModulusError{ModulusFailure::NonNumeralResult, "value is not a numeral",
                        std::move(result)};
  }
  return ModulusReport{done.value->number(), done.steps, done.world, std::move(trace), k};
}

OracleResult oracle_modulus(const TermPtr& functional, const TermPtr& alpha, const RefWorld& w,
                            std::uint64_t fuel) {
  ProbeResult probed = eval_probe(functional, ProbeState{alpha, {}}, w, fuel);
  OracleResult out{std::nullopt, std::move(probed.log), std::move(probed.result)};
  if (is_done(out.result)) {
    Nat top = 0;
    for (const auto& n : out.log) top = std::max(top, n);
    out.modulus = top + 1;
  }
  return out;
}

}  // namespace boxtt
