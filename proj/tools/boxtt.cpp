#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "boxtt/continuity.hpp"
#include "boxtt/eval.hpp"
#include "boxtt/report.hpp"
#include "boxtt/sexp.hpp"
#include "boxtt/suites.hpp"

namespace {

using namespace boxtt;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kStuck = 2;
constexpr int kTimedOut = 3;
constexpr int kPurity = 5;
constexpr int kNonNumeral = 6;
constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kIoError = 74;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised for well-formed input the command refuses (unbound names and the like).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

void collect_names(const TermPtr& t, std::set<ChoiceName>& out) {
  if (!t->has_names()) return;
  if (t->kind() == Kind::Name) out.insert(t->choice_name());
  for (const auto& k : t->kids()) collect_names(k, out);
}

/// Every (name k) must refer to a cell of the world the program runs in.
void require_bound_names(const TermPtr& t, const RefWorld& w, const std::string& what) {
  std::set<ChoiceName> names;
  collect_names(t, names);
  for (ChoiceName k : names) {
    if (w.find(k) == nullptr) {
      throw InputError(what + " mentions (name " + std::to_string(k.id) + ") but the world has no such cell");
    }
  }
}

struct Loaded {
  TermPtr term;
  RefWorld world;
};

Loaded load_program(const std::string& path, const std::string& world_path) {
  SourceProgram p = parse_program(slurp(path));
  RefWorld w = p.world.value_or(RefWorld{});
  if (!world_path.empty()) w = parse_world(slurp(world_path));
  require_bound_names(p.term, w, path);
  return {p.term, w};
}

std::uint64_t effective_fuel(const std::optional<std::uint64_t>& flag) {
  return flag ? *flag : fuel_from_env();
}

int report_result(const EvalResult& r) {
  if (const auto* d = std::get_if<Done>(&r)) {
    std::cout << print(d->value) << "\n" << print_world(d->world) << "\n";
    std::cout << "steps: " << d->steps << "\n";
    return kOk;
  }
  if (const auto* s = std::get_if<StuckAt>(&r)) {
    std::cout << "stuck (" << reason_name(s->reason) << ") after " << s->steps << " steps\n"
              << print(s->term) << "\n" << print_world(s->world) << "\n";
    return kStuck;
  }
  const auto& t = std::get<Timeout>(r);
  std::cout << "timeout after " << t.steps << " steps\n";
  return kTimedOut;
}

struct Options {
  std::string file;
  std::string file2;
  std::string world;
  std::optional<std::uint64_t> fuel;
  std::string json_out;
  std::string report_out;

  std::string suite;
  std::size_t cases = 500;
  std::uint64_t seed = 42;
  std::size_t betas = 10;
  std::size_t samples = 16;
  std::size_t depth = 4;
  std::size_t size = kDefaultGenSize;
  bool json = false;
  bool omit_timing = false;
  std::string dump_dir;
  std::string replay;
};

int cmd_eval(const Options& o) {
  const Loaded p = load_program(o.file, o.world);
  return report_result(eval(p.term, p.world, effective_fuel(o.fuel)));
}

int cmd_trace(const Options& o) {
  const Loaded p = load_program(o.file, o.world);
  const Trace t = eval_trace(p.term, p.world, effective_fuel(o.fuel));
  if (!o.json_out.empty()) {
    spit(o.json_out, trace_to_jsonl(t));
  } else {
    for (std::size_t i = 0; i < t.states.size(); ++i) {
      std::cout << i << "  " << print(t.states[i].term) << "  " << print_world(t.states[i].world) << "\n";
    }
  }
  const EvalResult r = result_of(t);
  if (std::holds_alternative<StuckAt>(r)) return kStuck;
  if (std::holds_alternative<Timeout>(r)) return kTimedOut;
  return kOk;
}

TermPtr load_pure_term(const std::string& path) {
  SourceProgram p = parse_program(slurp(path));
  if (!nonames(p.term)) throw InputError(path + " contains a choice name or fresh; inputs must be pure");
  if (!p.term->closed()) throw InputError(path + " is not closed");
  return p.term;
}

int cmd_modulus(const Options& o) {
  const TermPtr functional = load_pure_term(o.file);
  const TermPtr alpha = load_pure_term(o.file2);
  const RefWorld w = o.world.empty() ? RefWorld{} : parse_world(slurp(o.world));
  const std::uint64_t fuel = effective_fuel(o.fuel);

  const ModulusResult r = compute_modulus(functional, alpha, w, fuel);
  if (const auto* e = std::get_if<ModulusError>(&r)) {
    std::cout << "modulus failed: " << failure_name(e->kind) << ": " << e->detail << "\n";
    switch (e->kind) {
      case ModulusFailure::PurityViolation: return kPurity;
      case ModulusFailure::NonNumeralResult: return kNonNumeral;
      case ModulusFailure::Timeout: return kTimedOut;
      case ModulusFailure::Stuck: return kStuck;
    }
  }
  const ModulusReport& rep = std::get<ModulusReport>(r);
  const OracleResult oracle = oracle_modulus(functional, alpha, w, fuel);
  const bool agree = oracle.modulus && *oracle.modulus == rep.modulus;
  std::cout << "modulus = " << to_string(rep.modulus)
            << ", oracle = " << (oracle.modulus ? to_string(*oracle.modulus) : "none") << ", "
            << (agree ? "AGREE" : "DISAGREE") << "\n";
  if (!o.report_out.empty()) spit(o.report_out, modulus_to_json(rep, oracle).dump(2) + "\n");
  return agree ? kOk : kFailed;
}

int cmd_check(const Options& o) {
  if (!known_suite(o.suite)) throw CLI::ValidationError("suite", "unknown suite '" + o.suite + "'");
  SuiteParams params;
  params.cases = o.cases;
  params.seed = o.seed;
  params.fuel = effective_fuel(o.fuel);
  params.betas = o.betas;
  params.sampling = SamplingParams{o.depth, o.samples, 0};
  params.gen_size = o.size;

  std::optional<std::vector<CaseSpec>> replay;
  if (!o.replay.empty()) replay = parse_case_file(slurp(o.replay));

  const std::vector<SuiteReport> reports = run_suites(o.suite, params, replay);
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    if (!o.json) std::cout << suite_to_text(r, o.omit_timing);
  }
  if (o.json) std::cout << suites_to_json(reports, o.omit_timing).dump(2) << "\n";

  if (!o.dump_dir.empty()) {
    std::filesystem::create_directories(o.dump_dir);
    for (const auto& r : reports) {
      for (const auto& f : r.failures) {
        if (!f.inputs) continue;
        spit(o.dump_dir + "/" + r.suite + "-" + std::to_string(f.case_index) + ".sexp",
             case_to_sexp(*f.inputs));
      }
    }
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boxtt: evaluator and continuity checker for a stateful type theory core"};
  app.require_subcommand(1);
  Options o;

  auto* ev = app.add_subcommand("eval", "evaluate a program and print its value and final world");
  ev->add_option("file", o.file, "program (.sexp)")->required();
  ev->add_option("--world", o.world, "world literal file");
  ev->add_option("--fuel", o.fuel, "step budget");

  auto* tr = app.add_subcommand("trace", "print every evaluation state");
  tr->add_option("file", o.file, "program (.sexp)")->required();
  tr->add_option("--world", o.world, "world literal file");
  tr->add_option("--fuel", o.fuel, "step budget");
  tr->add_option("--json", o.json_out, "write the trace as JSON lines to this file");

  auto* mo = app.add_subcommand("modulus", "compute the modulus of continuity of F at alpha");
  mo->add_option("F", o.file, "functional (.sexp)")->required();
  mo->add_option("alpha", o.file2, "point (.sexp)")->required();
  mo->add_option("--world", o.world, "world literal file");
  mo->add_option("--fuel", o.fuel, "step budget");
  mo->add_option("--report", o.report_out, "write a JSON report to this file");

  auto* ch = app.add_subcommand("check", "run validation suites");
  ch->add_option("suite", o.suite, "modulus|highest|continuity|extension|purity-counterexample|membership|assumptions|all")
      ->required();
  ch->add_option("--cases", o.cases, "generated cases")->capture_default_str();
  ch->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  ch->add_option("--fuel", o.fuel, "step budget");
  ch->add_option("--betas", o.betas, "betas per case")->capture_default_str();
  ch->add_option("--samples", o.samples, "sampled world extensions")->capture_default_str();
  ch->add_option("--depth", o.depth, "extension depth")->capture_default_str();
  ch->add_option("--size", o.size, "generator size")->capture_default_str();
  ch->add_flag("--json", o.json, "print a JSON report");
  ch->add_flag("--omit-timing", o.omit_timing, "leave wall times out of the report");
  ch->add_option("--dump-dir", o.dump_dir, "write failing cases here as .sexp files");
  ch->add_option("--replay", o.replay, "run the suites on cases from this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ev) return cmd_eval(o);
    if (*tr) return cmd_trace(o);
    if (*mo) return cmd_modulus(o);
    return cmd_check(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kDataError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}
