// Acceptance run: one PASS/FAIL line per criterion. The optional argument is
// the path of the boxtt executable, used by the determinism criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "boxtt/continuity.hpp"
#include "boxtt/eval.hpp"
#include "boxtt/generators.hpp"
#include "boxtt/membership.hpp"
#include "boxtt/rng.hpp"
#include "boxtt/sexp.hpp"
#include "boxtt/sugar.hpp"
#include "boxtt/suites.hpp"

using namespace boxtt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& ex) {
    out = {false, std::string("exception: ") + ex.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << secs << " s";
  if (limit_s > 0) {
    time << " of " << limit_s << " s";
    if (secs >= limit_s) {
      out.ok = false;
      out.detail += " [over time limit]";
    }
  }
  if (!out.ok) ++failures;
  std::cout << (out.ok ? "PASS" : "FAIL") << "  " << number << ". " << title << ": " << out.detail
            << " (" << time.str() << ")" << std::endl;
}

Outcome from_suite(const SuiteReport& r) {
  std::string detail = std::to_string(r.cases_run) + (r.cases_run == 1 ? " case, " : " cases, ") +
                       std::to_string(r.failures.size()) + " failures";
  if (!r.failures.empty()) detail += "; first: " + r.failures.front().message;
  return {r.passed(), detail};
}

bool steps_to(const TermPtr& t, const RefWorld& w, const TermPtr& t2, const RefWorld& w2) {
  const StepOutcome out = step(t, w);
  const auto* s = std::get_if<Stepped>(&out);
  return s != nullptr && same(s->term, t2) && s->world == w2;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<CaseSpec> cases = gen_cases(500, 42);

  criterion(1, "worked example", 1.0, [] {
    const TermPtr f = lam("a", app(var("a"), app(var("a"), num(2))));
    const TermPtr alpha = lam("n", succ(var("n")));
    const ModulusResult m = compute_modulus(f, alpha, RefWorld{});
    const OracleResult o = oracle_modulus(f, alpha, RefWorld{});
    if (!std::holds_alternative<ModulusReport>(m) || !o.modulus) return Outcome{false, "no modulus"};
    const Nat& got = std::get<ModulusReport>(m).modulus;
    return Outcome{got == 4 && *o.modulus == 4,
                   "modulus = " + to_string(got) + ", oracle = " + to_string(*o.modulus)};
  });

  criterion(2, "reduction rule golden suite", 0, [] {
    const ChoiceName k{0};
    const RefWorld e;
    const RefWorld w3 = single_cell_world(k, 3);
    const TermPtr id = lam("x", var("x"));
    const TermPtr s = lam("m", lam("r", succ(var("r"))));
    const std::vector<std::pair<const char*, bool>> rules = {
        {"beta", steps_to(app(lam("x", succ(var("x"))), num(3)), e, succ(num(3)), e)},
        {"fix", steps_to(fix(id), e, app(id, fix(id)), e)},
        {"let", steps_to(let("x", num(2), succ(var("x"))), e, succ(num(2)), e)},
        {"succ", steps_to(succ(num(4)), e, num(5), e)},
        {"natrec-0", steps_to(natrec(num(0), num(7), s), e, num(7), e)},
        {"natrec-succ", steps_to(natrec(num(2), num(7), s), e, app(app(s, num(1)), natrec(num(1), num(7), s)), e)},
        {"spread", steps_to(spread(pair(num(1), num(2)), "x", "y", pair(var("y"), var("x"))), e, pair(num(2), num(1)), e)},
        {"decide-inl", steps_to(decide(inl(num(1)), "x", succ(var("x")), "y", num(0)), e, succ(num(1)), e)},
        {"decide-inr", steps_to(decide(inr(num(1)), "x", num(0), "y", succ(var("y"))), e, succ(num(1)), e)},
        {"read", steps_to(read(name(k)), w3, num(3), w3)},
        {"choose", steps_to(choose(name(k), num(5)), w3, star(), single_cell_world(k, 5))},
        {"fresh", steps_to(fresh("x", var("x")), e, name(k), single_cell_world(k, 0))},
    };
    std::string bad;
    for (const auto& [rule, ok] : rules) {
      if (!ok) bad += std::string(" ") + rule;
    }
    return Outcome{bad.empty(), std::to_string(rules.size()) + " rules" + (bad.empty() ? "" : ", mismatched:" + bad)};
  });

  criterion(3, "traces respect world extension", 120, [&] { return from_suite(check_extension_suite(cases)); });

  criterion(4, "modulus is a number", 300, [&] {
    return from_suite(check_modulus_suite(cases, SamplingParams{4, 16, 42}));
  });

  criterion(5, "modulus is the highest number", 0, [&] { return from_suite(check_highest_suite(cases)); });

  criterion(6, "continuity with 10 betas per case", 300, [&] { return from_suite(check_continuity_suite(cases, 10)); });

  criterion(7, "purity counterexample", 0, [] { return from_suite(check_purity_counterexample()); });

  criterion(8, "effect membership examples", 0, [] {
    const ChoiceName k{0};
    const RefWorld w = single_cell_world(k, 3);
    const TermPtr r = read(name(k));
    const TermPtr increment = let("x", succ(read(name(k))), choose(name(k), var("x")));
    const TermPtr restore =
        let("x", read(name(k)),
            seq(let("y", succ(var("x")), choose(name(k), var("y"))), choose(name(k), var("x"))));
    const bool results[] = {
        !member_noread_sampled(r, w),
        member_noread_sampled(let("x", r, num(0)), w),
        !member_nowrite_sampled(increment, w),
        member_nowrite_sampled(restore, w),
        member_pure(num(0), w),
        !member_pure(seq(r, num(0)), w),
    };
    int exact = 0;
    for (bool b : results) exact += b ? 1 : 0;
    return Outcome{exact == 6, std::to_string(exact) + "/6 exact"};
  });

  criterion(9, "read-after-write assumptions", 0, [] {
    return from_suite(check_assumptions_suite(1000, 42, SamplingParams{4, 16, 42}));
  });

  criterion(10, "determinism and parser round-trip", 0, [&] {
    std::size_t round_trips = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const TermPtr t = gen_term(mix_seed(s, 10), 1 + s % 12);
      if (same(parse_term(print(t)), t)) ++round_trips;
    }
    std::string detail = std::to_string(round_trips) + "/1000 round-trips";
    if (cli.empty()) return Outcome{false, detail + "; boxtt path not given"};
    const std::string base = "boxtt_acceptance_" + std::to_string(::getpid());
    const std::string cmd = cli + " check all --seed 42 --json --omit-timing > ";
    const int rc1 = std::system((cmd + base + ".1.json").c_str());
    const int rc2 = std::system((cmd + base + ".2.json").c_str());
    const std::string a = slurp(base + ".1.json");
    const std::string b = slurp(base + ".2.json");
    std::remove((base + ".1.json").c_str());
    std::remove((base + ".2.json").c_str());
    const bool same_json = !a.empty() && a == b;
    detail += same_json ? ", identical reports (" + std::to_string(a.size()) + " bytes)" : ", reports differ";
    if (rc1 != 0 || rc2 != 0) detail += ", check all exited nonzero";
    return Outcome{round_trips == 1000 && same_json && rc1 == 0 && rc2 == 0, detail};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
