#include "boxtt/report.hpp"

#include <sstream>

#include "boxtt/sexp.hpp"

namespace boxtt {

using nlohmann::json;

json world_to_json(const RefWorld& w) {
  json cells = json::array();
  for (const Cell& c : w.cells()) {
    cells.push_back({{"name", c.name.id},
                     {"restriction", "nat"},
                     {"default", to_string(c.restriction.default_choice)},
                     {"value", to_string(c.value)},
                     {"mutable", c.mutable_}});
  }
  return json{{"cells", std::move(cells)}};
}

json suite_to_json(const SuiteReport& r, bool omit_timing) {
  json failures = json::array();
  for (const Failure& f : r.failures) {
    json item{{"case", f.case_index},
              {"seed", f.seed},
              {"message", f.message},
              {"expected", f.expected},
              {"actual", f.actual}};
    if (f.inputs) item["inputs"] = case_to_sexp(*f.inputs);
    failures.push_back(std::move(item));
  }
  json stats = json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  json out{{"suite", r.suite},
           {"cases_run", r.cases_run},
           {"passed", r.passed()},
           {"failures", std::move(failures)},
           {"stats", std::move(stats)}};
  if (!omit_timing) out["wall_ms"] = r.wall_ms;
  return out;
}

json suites_to_json(const std::vector<SuiteReport>& reports, bool omit_timing) {
  json arr = json::array();
  bool all = true;
  for (const auto& r : reports) {
    arr.push_back(suite_to_json(r, omit_timing));
    all = all && r.passed();
  }
  return json{{"passed", all}, {"suites", std::move(arr)}};
}

std::string suite_to_text(const SuiteReport& r, bool omit_timing) {
  std::ostringstream out;
  out << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << r.cases_run
      << (r.cases_run == 1 ? " case" : " cases");
  if (!r.passed()) out << ", " << r.failures.size() << " failures";
  if (!omit_timing) out << ", " << static_cast<long long>(r.wall_ms) << " ms";
  out << ")\n";
  for (const auto& [k, v] : r.stats) out << "  " << k << " = " << v << "\n";
  for (const Failure& f : r.failures) {
    out << "  case " << f.case_index << " seed " << f.seed << ": " << f.message;
    if (!f.expected.empty() || !f.actual.empty()) {
      out << "\n    expected: " << f.expected << "\n    actual:   " << f.actual;
    }
    out << "\n";
  }
  return out.str();
}

json modulus_to_json(const ModulusReport& r, const OracleResult& oracle) {
  json log = json::array();
  for (const Nat& n : oracle.log) log.push_back(to_string(n));
  json out{{"modulus", to_string(r.modulus)},
           {"fresh_name", r.fresh_name.id},
           {"steps", r.fuel_used},
           {"final_world", world_to_json(r.final_world)},
           {"oracle_log", std::move(log)}};
  if (oracle.modulus) {
    out["oracle"] = to_string(*oracle.modulus);
    out["agree"] = *oracle.modulus == r.modulus;
  } else {
    out["oracle"] = nullptr;
    out["agree"] = false;
  }
  return out;
}

std::string trace_to_jsonl(const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    json line{{"step", i}, {"term", print(t.states[i].term)}, {"world", world_to_json(t.states[i].world)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string case_to_sexp(const CaseSpec& c) {
  std::ostringstream out;
  out << "(case (seed " << c.seed << ") (fuel " << c.fuel << ")\n"
      << "  (F " << print(c.functional) << ")\n"
      << "  (alpha " << print(c.alpha) << ")\n"
      << "  " << print_world(c.world) << ")\n";
  return out.str();
}

namespace {

const SExpr& field(const SExpr& e, std::string_view key) {
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& item = e.items[i];
    if (item.head() == key) {
      if (key != "world" && item.items.size() != 2) {
        throw ParseError(ParseErrorKind::Arity, item.line, item.column,
                         "(" + std::string(key) + " ...) takes one argument");
      }
      return item;
    }
  }
  throw ParseError(ParseErrorKind::Syntax, e.line, e.column,
                   "case is missing (" + std::string(key) + " ...)");
}

std::uint64_t number_field(const SExpr& e, std::string_view key) {
  const SExpr& item = field(e, key).items[1];
  if (item.is_list) {
    throw ParseError(ParseErrorKind::Syntax, item.line, item.column, "expected a number");
  }
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(item.atom, &used);
    if (used != item.atom.size()) throw std::invalid_argument(item.atom);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ParseErrorKind::Syntax, item.line, item.column,
                     "expected a number, got '" + item.atom + "'");
  }
}

}  // namespace

std::vector<CaseSpec> parse_case_file(std::string_view text) {
  std::vector<CaseSpec> out;
  for (const SExpr& e : read_sexprs(text)) {
    if (e.head() != "case") {
      throw ParseError(ParseErrorKind::UnknownForm, e.line, e.column, "expected (case ...)");
    }
    CaseSpec c;
    c.seed = number_field(e, "seed");
    c.fuel = number_field(e, "fuel");
    c.functional = term_from_sexpr(field(e, "F").items[1]);
    c.alpha = term_from_sexpr(field(e, "alpha").items[1]);
    c.world = world_from_sexpr(field(e, "world"));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace boxtt
