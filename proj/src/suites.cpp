#include "boxtt/suites.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>

#include "boxtt/continuity.hpp"
#include "boxtt/eval.hpp"
#include "boxtt/membership.hpp"
#include "boxtt/rng.hpp"
#include "boxtt/sexp.hpp"
#include "boxtt/similarity.hpp"
#include "boxtt/sugar.hpp"

namespace boxtt {

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failures for one case.
class CaseLog {
 public:
  CaseLog(std::size_t index, const CaseSpec* spec) : index_(index), spec_(spec) {}

  void fail(std::string message, std::string expected = {}, std::string actual = {}) {
    Failure f;
    f.case_index = index_;
    if (spec_ != nullptr) {
      f.seed = spec_->seed;
      f.inputs = *spec_;
    }
    f.expected = std::move(expected);
    f.actual = std::move(actual);
    f.message = std::move(message);
    failures_.push_back(std::move(f));
  }

  bool ok() const { return failures_.empty(); }
  std::vector<Failure>& failures() { return failures_; }

 private:
  std::size_t index_;
  const CaseSpec* spec_;
  std::vector<Failure> failures_;
};

std::string describe(const EvalResult& r) {
  if (const auto* d = std::get_if<Done>(&r)) return "done " + print(d->value);
  if (const auto* s = std::get_if<StuckAt>(&r)) {
    return "stuck (" + std::string(reason_name(s->reason)) + ") at " + print(s->term);
  }
  return "timeout after " + std::to_string(steps_of(r)) + " steps";
}

std::string describe(const ModulusError& e) {
  std::string out = std::string(failure_name(e.kind)) + ": " + e.detail;
  if (e.result) out += " [" + describe(*e.result) + "]";
  return out;
}

template <class PerCase>
SuiteReport run_cases(std::string suite, const std::vector<CaseSpec>& cases, PerCase&& per_case) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = std::move(suite);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CaseLog log(i, &cases[i]);
    try {
      per_case(cases[i], log, report);
    } catch (const std::exception& ex) {
      log.fail(std::string("exception: ") + ex.what());
    }
    for (auto& f : log.failures()) report.failures.push_back(std::move(f));
    ++report.cases_run;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

void bump(SuiteReport& r, const std::string& key, std::uint64_t by) {
  for (auto& [k, v] : r.stats) {
    if (k == key) {
      v += by;
      return;
    }
  }
  r.stats.emplace_back(key, by);
}

/// w extended with the recording cell mod(F, α) would create, already reset to 0.
std::pair<ChoiceName, RefWorld> recording_world(const RefWorld& w) {
  const ChoiceName k = new_choice(w);
  return {k, write(start_new_choice(w, nat_only()), k, 0)};
}

bool is_chain(const Trace& t, std::size_t* bad_index) {
  for (std::size_t i = 1; i < t.states.size(); ++i) {
    if (!extends(t.states[i - 1].world, t.states[i].world)) {
      *bad_index = i;
      return false;
    }
  }
  if (!t.states.empty() && !extends(t.states.front().world, t.states.back().world)) {
    *bad_index = t.states.size() - 1;
    return false;
  }
  return true;
}

}  // namespace

SuiteReport check_modulus_suite(const std::vector<CaseSpec>& cases, const SamplingParams& sampling) {
  return run_cases("modulus", cases, [&](const CaseSpec& c, CaseLog& log, SuiteReport& report) {
    const ModulusResult r = compute_modulus(c.functional, c.alpha, c.world, c.fuel);
    if (const auto* e = std::get_if<ModulusError>(&r)) {
      log.fail("compute_modulus failed", "a numeral", describe(*e));
      return;
    }
    const Nat m = std::get<ModulusReport>(r).modulus;
    if (m > 1) bump(report, "moduli_above_1", 1);
    if (m > 4) bump(report, "moduli_above_4", 1);
    const OracleResult oracle = oracle_modulus(c.functional, c.alpha, c.world, c.fuel);
    if (!oracle.modulus) {
      log.fail("oracle failed", to_string(m), describe(oracle.result));
    } else if (*oracle.modulus != m) {
      log.fail("modulus disagrees with oracle", to_string(*oracle.modulus), to_string(m));
    }
    const auto worlds = sample_extensions(c.world, sampling.depth, sampling.count,
                                          mix_seed(c.seed, sampling.seed + 0x77));
    for (std::size_t i = 1; i < worlds.size(); ++i) {
      const ModulusResult again = compute_modulus(c.functional, c.alpha, worlds[i], c.fuel);
      if (const auto* e = std::get_if<ModulusError>(&again)) {
        log.fail("compute_modulus failed in extension " + std::to_string(i), to_string(m),
                 describe(*e));
        return;
      }
      const Nat& m2 = std::get<ModulusReport>(again).modulus;
      if (m2 != m) {
        log.fail("modulus varies across extensions (extension " + std::to_string(i) + ": " +
                     print_world(worlds[i]) + ")",
                 to_string(m), to_string(m2));
        return;
      }
    }
  });
}

SuiteReport check_highest_suite(const std::vector<CaseSpec>& cases) {
  return run_cases("highest", cases, [&](const CaseSpec& c, CaseLog& log, SuiteReport&) {
    const ModulusResult r = compute_modulus(c.functional, c.alpha, c.world, c.fuel, true);
    if (const auto* e = std::get_if<ModulusError>(&r)) {
      log.fail("compute_modulus failed", "a numeral", describe(*e));
      return;
    }
    const ModulusReport& rep = std::get<ModulusReport>(r);
    const Nat bound = rep.modulus - 1;
    for (std::size_t i = 0; i < rep.trace->states.size(); ++i) {
      const auto v = read(rep.trace->states[i].world, rep.fresh_name);
      if (v && *v > bound) {
        log.fail("recorded value above modulus - 1 at step " + std::to_string(i),
                 "<= " + to_string(bound), to_string(*v));
        return;
      }
    }
    const auto last = read(rep.final_world, rep.fresh_name);
    if (!last || *last != bound) {
      log.fail("final recorded value is not modulus - 1", to_string(bound),
               last ? to_string(*last) : "absent");
    }
  });
}

SuiteReport check_continuity_suite(const std::vector<CaseSpec>& cases, std::size_t betas,
                                   std::size_t lockstep_steps) {
  return run_cases("continuity", cases, [&](const CaseSpec& c, CaseLog& log, SuiteReport& report) {
    const ModulusResult r = compute_modulus(c.functional, c.alpha, c.world, c.fuel);
    if (const auto* e = std::get_if<ModulusError>(&r)) {
      log.fail("compute_modulus failed", "a numeral", describe(*e));
      return;
    }
    const Nat n = std::get<ModulusReport>(r).modulus;
    const EvalResult on_alpha = eval(app(c.functional, c.alpha), c.world, c.fuel);
    const auto expected = numeral_of(on_alpha);
    if (!expected) {
      log.fail("F alpha is not a numeral", "a numeral", describe(on_alpha));
      return;
    }
    const auto [k, recording] = recording_world(c.world);
    const TermPtr probed = app(c.functional, mk_upd(k, c.alpha));
    const EvalResult on_upd = eval(probed, recording, c.fuel);
    if (numeral_of(on_upd) != expected) {
      log.fail("F (upd k alpha) differs from F alpha", to_string(*expected), describe(on_upd));
    }

    for (std::size_t j = 0; j < betas; ++j) {
      const TermPtr beta = gen_beta_agreeing(c.alpha, n, mix_seed(c.seed, 100 + j), c.fuel);
      const std::string tag = " (beta " + std::to_string(j) + ": " + print(beta) + ")";
      const EvalResult on_beta = eval(app(c.functional, beta), c.world, c.fuel);
      if (numeral_of(on_beta) != expected) {
        log.fail("F beta differs from F alpha" + tag, to_string(*expected), describe(on_beta));
        continue;
      }
      const TermPtr forced = app(c.functional, mk_force(beta));
      const EvalResult on_forced = eval(forced, c.world, c.fuel);
      if (numeral_of(on_forced) != expected) {
        log.fail("F (force beta) differs from F alpha" + tag, to_string(*expected),
                 describe(on_forced));
        continue;
      }

      // Bounded lockstep: the two computations stay similar until they
      // desynchronise (upd and force unfold at different speeds).
      if (!sim_force(probed, forced, k, c.alpha, beta)) {
        log.fail("initial terms are not sim_force-related" + tag);
        continue;
      }
      TermPtr t1 = probed;
      TermPtr t2 = forced;
      RefWorld w1 = recording;
      RefWorld w2 = c.world;
      std::uint64_t aligned = 0;
      for (std::size_t s = 0; s < lockstep_steps; ++s) {
        auto s1 = step(t1, w1);
        auto s2 = step(t2, w2);
        auto* n1 = std::get_if<Stepped>(&s1);
        auto* n2 = std::get_if<Stepped>(&s2);
        if (n1 == nullptr || n2 == nullptr) break;
        if (!sim_force(n1->term, n2->term, k, c.alpha, beta)) {
          bump(report, "lockstep_desync", 1);
          break;
        }
        t1 = n1->term;
        t2 = n2->term;
        w1 = n1->world;
        w2 = n2->world;
        ++aligned;
      }
      bump(report, "lockstep_aligned_steps", aligned);
      bump(report, "betas_checked", 1);
    }
  });
}

SuiteReport check_extension_suite(const std::vector<CaseSpec>& cases) {
  return run_cases("extension", cases, [&](const CaseSpec& c, CaseLog& log, SuiteReport&) {
    const auto [k, recording] = recording_world(c.world);
    const std::vector<std::pair<std::string, Trace>> traces = {
        {"mod", eval_trace(mk_mod(c.functional, c.alpha), c.world, c.fuel)},
        {"F alpha", eval_trace(app(c.functional, c.alpha), c.world, c.fuel)},
        {"F (upd k alpha)", eval_trace(app(c.functional, mk_upd(k, c.alpha)), recording, c.fuel)},
    };
    for (const auto& [label, trace] : traces) {
      if (trace.exhausted || trace.stuck) {
        log.fail(label + " did not finish", "a value", describe(result_of(trace)));
        continue;
      }
      std::size_t bad = 0;
      if (!is_chain(trace, &bad)) {
        log.fail(label + " trace is not a world chain at step " + std::to_string(bad),
                 print_world(trace.states[bad - 1].world), print_world(trace.states[bad].world));
      }
    }
  });
}

SuiteReport check_purity_counterexample() {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "purity-counterexample";
  CaseLog log(0, nullptr);

  const ChoiceName gamma{0};
  const ChoiceName k{1};
  const RefWorld w({Cell{gamma, nat_only(), 0, true}, Cell{k, nat_only(), 0, true}});
  const TermPtr alpha = lam("n", iflt(read(name(gamma)), num(1), num(0), num(1)));
  const TermPtr arg = seq(choose(name(gamma), num(1)), num(1));

  const EvalResult plain = eval(app(alpha, arg), w);
  if (numeral_of(plain) != Nat(0)) log.fail("alpha n should not evaluate n", "(num 0)", describe(plain));

  const EvalResult probed = eval(app(mk_upd(k, alpha), arg), w);
  if (numeral_of(probed) != Nat(1)) log.fail("upd k alpha n should force n", "(num 1)", describe(probed));

  const TermPtr functional = lam("f", app(var("f"), num(0)));
  const ModulusResult m = compute_modulus(functional, alpha, w);
  const auto* e = std::get_if<ModulusError>(&m);
  if (e == nullptr || e->kind != ModulusFailure::PurityViolation) {
    log.fail("compute_modulus should reject the impure alpha", "PurityViolation",
             e ? std::string(failure_name(e->kind)) : "a report");
  }

  report.cases_run = 1;
  report.failures = std::move(log.failures());
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

SuiteReport check_membership_suite(const std::vector<CaseSpec>& cases,
                                   const SamplingParams& sampling) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "membership";
  CaseLog log(0, nullptr);

  const ChoiceName kappa{0};
  const RefWorld w = single_cell_world(kappa, 3);
  const MembershipParams p{sampling, kDefaultFuel};
  const TermPtr r = read(name(kappa));
  const TermPtr increment = let("x", succ(read(name(kappa))), choose(name(kappa), var("x")));
  const TermPtr restore =
      let("x", read(name(kappa)),
          seq(let("y", succ(var("x")), choose(name(kappa), var("y"))), choose(name(kappa), var("x"))));

  struct Expectation {
    const char* label;
    bool expected;
    std::function<bool()> check;
  };
  const std::vector<Expectation> examples = {
      {"noread !k", false, [&] { return member_noread_sampled(r, w, p); }},
      {"noread let x = !k in 0", true,
       [&] { return member_noread_sampled(let("x", r, num(0)), w, p); }},
      {"nowrite k := !k + 1", false, [&] { return member_nowrite_sampled(increment, w, p); }},
      {"nowrite read-then-restore", true, [&] { return member_nowrite_sampled(restore, w, p); }},
      {"pure 0", true, [&] { return member_pure(num(0), w, p); }},
      {"pure seq !k 0", false, [&] { return member_pure(seq(r, num(0)), w, p); }},
      {"nat !k", false, [&] { return member_nat_sampled(r, w, p); }},
      {"nat let x = !k in 0", true, [&] { return member_nat_sampled(let("x", r, num(0)), w, p); }},
  };
  for (const auto& ex : examples) {
    const bool got = ex.check();
    if (got != ex.expected) {
      log.fail(std::string("membership example: ") + ex.label, ex.expected ? "member" : "non-member",
               got ? "member" : "non-member");
    }
    ++report.cases_run;
  }
  for (auto& f : log.failures()) report.failures.push_back(std::move(f));

  // Applications of pure functionals to pure arguments are pure numbers.
  const std::size_t generated = std::min<std::size_t>(cases.size(), 50);
  for (std::size_t i = 0; i < generated; ++i) {
    const CaseSpec& c = cases[i];
    CaseLog clog(i, &c);
    const TermPtr t = app(c.functional, c.alpha);
    const MembershipParams cp{{sampling.depth, sampling.count, mix_seed(c.seed, 0x51)}, c.fuel};
    if (!member_pure(t, c.world, cp)) clog.fail("F alpha is not a pure value");
    if (!member_nat_sampled(t, c.world, cp)) clog.fail("F alpha is not a fixed numeral");
    for (auto& f : clog.failures()) report.failures.push_back(std::move(f));
    ++report.cases_run;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

SuiteReport check_assumptions_suite(std::size_t trials, std::uint64_t seed,
                                    const SamplingParams& sampling) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "assumptions";
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed ^ 0xa55a, i);
    Rng rng(s);
    RefWorld w = gen_world(s);
    if (w.empty() || rng.chance(1, 4)) w = start_new_choice(w, nat_only());
    const ChoiceName k = w.cells()[rng.below(w.size())].name;
    const Choice value(rng.below(100));
    CaseLog log(i, nullptr);
    const std::string where = " (w = " + print_world(w) + ", k = " + std::to_string(k.id) +
                              ", c = " + to_string(value) + ")";

    const RefWorld written = write(w, k, value);
    if (!extends(w, written)) log.fail("write does not extend" + where);
    if (compatible(k, w, nat_only())) {
      const auto back = read(written, k);
      if (!back || *back != value) {
        log.fail("read after write" + where, to_string(value), back ? to_string(*back) : "absent");
      }
      for (const auto& wx : sample_extensions(written, sampling.depth, sampling.count, s)) {
        const auto later = read(wx, k);
        if (!later) log.fail("read undefined in an extension of the write" + where);
        if (!compatible(k, wx, nat_only())) log.fail("compatibility lost in an extension" + where);
      }
    }
    for (auto& f : log.failures()) {
      f.seed = s;
      report.failures.push_back(std::move(f));
    }
    ++report.cases_run;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

bool known_suite(const std::string& name) {
  const auto& names = suite_names();
  return name == "all" || std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<SuiteReport> run_suites(const std::string& name, const SuiteParams& params,
                                    const std::optional<std::vector<CaseSpec>>& replay) {
  const std::vector<CaseSpec> cases =
      replay ? *replay : gen_cases(params.cases, params.seed, params.fuel, params.gen_size);
  SamplingParams sampling = params.sampling;
  sampling.seed = params.seed;

  std::vector<SuiteReport> out;
  const auto wanted = [&](const char* suite) { return name == "all" || name == suite; };
  if (wanted("modulus")) out.push_back(check_modulus_suite(cases, sampling));
  if (wanted("highest")) out.push_back(check_highest_suite(cases));
  if (wanted("continuity")) out.push_back(check_continuity_suite(cases, params.betas, params.lockstep_steps));
  if (wanted("extension")) out.push_back(check_extension_suite(cases));
  if (wanted("purity-counterexample")) out.push_back(check_purity_counterexample());
  if (wanted("membership")) out.push_back(check_membership_suite(cases, sampling));
  if (wanted("assumptions")) {
    out.push_back(check_assumptions_suite(params.assumption_trials, params.seed, sampling));
  }
  return out;
}

}  // namespace boxtt
