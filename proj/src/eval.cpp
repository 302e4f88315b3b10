#include "boxtt/eval.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace boxtt {

namespace {

const std::string kProbeVar = "%probe";

using Reduced = std::variant<TermPtr, IsValue, Stuck>;

/// The stepping machine. World changes are applied in place; the probe, when
/// present, turns `%probe` into a value whose applications are logged.
class Machine {
 public:
  explicit Machine(ProbeState* probe = nullptr) : probe_(probe) {}

  bool is_value(const TermPtr& t) const {
    return t->is_value() || (probe_ && t->kind() == Kind::Var && t->var() == kProbeVar);
  }

  Reduced reduce(const TermPtr& t, RefWorld& w) {
    switch (t->kind()) {
      case Kind::Var:
        if (is_value(t)) return IsValue{};
        return Stuck{StuckReason::FreeVariable};

      case Kind::App:
        return reduce_app(t, w);

      case Kind::Fix: {
        const TermPtr& body = t->kid(0);
        if (is_value(body)) return app(body, t);
        return congruence(t, 0, w);
      }

      case Kind::Let: {
        const TermPtr& bound = t->kid(0);
        if (is_value(bound)) return subst(t->kid(1), t->var(0), bound);
        return congruence(t, 0, w);
      }

      case Kind::Succ: {
        const TermPtr& arg = t->kid(0);
        if (arg->kind() == Kind::Num) return num(arg->number() + 1);
        if (is_value(arg)) return Stuck{StuckReason::BadScrutinee};
        return congruence(t, 0, w);
      }

      case Kind::NatRec: {
        const TermPtr& scrut = t->kid(0);
        if (scrut->kind() == Kind::Num) {
          if (scrut->number() == 0) return t->kid(1);
          TermPtr prev = num(scrut->number() - 1);
          return app(t->kid(2), prev, natrec(prev, t->kid(1), t->kid(2)));
        }
        if (is_value(scrut)) return Stuck{StuckReason::BadScrutinee};
        return congruence(t, 0, w);
      }

      case Kind::Spread: {
        const TermPtr& scrut = t->kid(0);
        if (scrut->kind() == Kind::Pair) {
          // The second binder is innermost when both binders share a name.
          return subst(t->kid(1), {{t->var(1), scrut->kid(1)}, {t->var(0), scrut->kid(0)}});
        }
        if (is_value(scrut)) return Stuck{StuckReason::BadScrutinee};
        return congruence(t, 0, w);
      }

      case Kind::Decide: {
        const TermPtr& scrut = t->kid(0);
        if (scrut->kind() == Kind::Inl) return subst(t->kid(1), t->var(0), scrut->kid(0));
        if (scrut->kind() == Kind::Inr) return subst(t->kid(2), t->var(1), scrut->kid(0));
        if (is_value(scrut)) return Stuck{StuckReason::BadScrutinee};
        return congruence(t, 0, w);
      }

      case Kind::Read: {
        const TermPtr& target = t->kid(0);
        if (target->kind() == Kind::Name) {
          auto c = boxtt::read(w, target->choice_name());
          if (!c) return Stuck{StuckReason::ReadUnknownName};
          return num(*c);
        }
        if (is_value(target)) return Stuck{StuckReason::BadScrutinee};
        return congruence(t, 0, w);
      }

      case Kind::Choose: {
        const TermPtr& target = t->kid(0);
        if (target->kind() == Kind::Name) {
          w = write(w, target->choice_name(), coerce(t->kid(1)));
          return star();
        }
        if (is_value(target)) return Stuck{StuckReason::BadScrutinee};
        return congruence(t, 0, w);
      }

      case Kind::Fresh: {
        const ChoiceName k = new_choice(w);
        w = start_new_choice(w, nat_only());
        return subst(t->kid(0), t->var(0), name(k));
      }

      default:
        // Lam, Star, Num, Inl, Inr, Pair, Name and every type constructor.
        return IsValue{};
    }
  }

 private:
  Reduced reduce_app(const TermPtr& t, RefWorld& w) {
    const TermPtr& head = t->kid(0);
    const TermPtr& arg = t->kid(1);
    if (probe_ && head->kind() == Kind::Var && head->var() == kProbeVar) {
      if (arg->kind() == Kind::Num) {
        probe_->log.push_back(arg->number());
        return app(probe_->probe_function, arg);
      }
      if (is_value(arg)) return Stuck{StuckReason::BadScrutinee};
      return congruence(t, 1, w);
    }
    if (head->kind() == Kind::Lam) return subst(head->kid(0), head->var(0), arg);
    if (is_value(head)) return Stuck{StuckReason::BadApplication};
    return congruence(t, 0, w);
  }

  /// Reduces child `i` one step and rebuilds t around the result.
  Reduced congruence(const TermPtr& t, std::size_t i, RefWorld& w) {
    Reduced inner = reduce(t->kid(i), w);
    if (auto* next = std::get_if<TermPtr>(&inner)) {
      std::vector<TermPtr> kids = t->kids();
      kids[i] = std::move(*next);
      return t->rebuild(t->vars(), std::move(kids));
    }
    if (std::holds_alternative<Stuck>(inner)) return inner;
    // A value in a boxed position is handled by the caller's redex rules.
    return Stuck{StuckReason::BadScrutinee};
  }

  ProbeState* probe_;
};

template <class OnState>
EvalResult drive(Machine& m, TermPtr t, RefWorld w, std::uint64_t fuel, OnState&& on_state) {
  std::uint64_t n = 0;
  on_state(t, w);
  for (;;) {
    if (m.is_value(t)) return Done{std::move(t), std::move(w), n};
    if (n == fuel) return Timeout{std::move(t), std::move(w), n};
    RefWorld next_world = w;
    Reduced r = m.reduce(t, next_world);
    if (auto* s = std::get_if<Stuck>(&r)) return StuckAt{std::move(t), std::move(w), s->reason, n};
    t = std::get<TermPtr>(std::move(r));
    w = std::move(next_world);
    ++n;
    on_state(t, w);
  }
}

}  // namespace

std::string_view reason_name(StuckReason r) {
  switch (r) {
    case StuckReason::FreeVariable: return "FreeVariable";
    case StuckReason::BadApplication: return "BadApplication";
    case StuckReason::BadScrutinee: return "BadScrutinee";
    case StuckReason::ReadUnknownName: return "ReadUnknownName";
    case StuckReason::NonNumeralChoiceRead: return "NonNumeralChoiceRead";
  }
  return "?";
}

StepOutcome step(const TermPtr& t, const RefWorld& w) {
  Machine m;
  RefWorld next = w;
  Reduced r = m.reduce(t, next);
  if (auto* s = std::get_if<Stuck>(&r)) return *s;
  if (std::holds_alternative<IsValue>(r)) return IsValue{};
  return Stepped{std::get<TermPtr>(std::move(r)), std::move(next)};
}

EvalResult eval(const TermPtr& t, const RefWorld& w, std::uint64_t fuel) {
  Machine m;
  return drive(m, t, w, fuel, [](const TermPtr&, const RefWorld&) {});
}

Trace eval_trace(const TermPtr& t, const RefWorld& w, std::uint64_t fuel) {
  Machine m;
  Trace trace;
  EvalResult r = drive(m, t, w, fuel, [&](const TermPtr& term, const RefWorld& world) {
    trace.states.push_back(State{term, world});
  });
  if (std::holds_alternative<Timeout>(r)) trace.exhausted = true;
  if (auto* s = std::get_if<StuckAt>(&r)) trace.stuck = s->reason;
  return trace;
}

EvalResult result_of(const Trace& trace) {
  const State& last = trace.last();
  const std::uint64_t n = trace.steps();
  if (trace.stuck) return StuckAt{last.term, last.world, *trace.stuck, n};
  if (trace.exhausted) return Timeout{last.term, last.world, n};
  return Done{last.term, last.world, n};
}

ProbeResult eval_probe(const TermPtr& functional, ProbeState probe, const RefWorld& w,
                       std::uint64_t fuel) {
  Machine m(&probe);
  EvalResult r = drive(m, app(functional, var(kProbeVar)), w, fuel,
                       [](const TermPtr&, const RefWorld&) {});
  return ProbeResult{std::move(r), std::move(probe.log)};
}

bool is_done(const EvalResult& r) { return std::holds_alternative<Done>(r); }

const Done* as_done(const EvalResult& r) { return std::get_if<Done>(&r); }

std::optional<Nat> numeral_of(const EvalResult& r) {
  const Done* d = as_done(r);
  if (d == nullptr || d->value->kind() != Kind::Num) return std::nullopt;
  return d->value->number();
}

std::uint64_t steps_of(const EvalResult& r) {
  return std::visit([](const auto& x) { return x.steps; }, r);
}

std::uint64_t fuel_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("BOXTT_FUEL");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) return fallback;
  return value;
}

}  // namespace boxtt
