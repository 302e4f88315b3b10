#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "boxtt/continuity.hpp"
#include "boxtt/suites.hpp"

namespace boxtt {

nlohmann::json world_to_json(const RefWorld& w);

/// One JSON object per suite. With `omit_timing` the wall-time field is left
/// out so that reports from identical runs compare equal byte for byte.
nlohmann::json suite_to_json(const SuiteReport& r, bool omit_timing);
nlohmann::json suites_to_json(const std::vector<SuiteReport>& reports, bool omit_timing);

/// "PASS modulus (500 cases, 812 ms)" followed by one indented line per failure.
std::string suite_to_text(const SuiteReport& r, bool omit_timing = false);

nlohmann::json modulus_to_json(const ModulusReport& r, const OracleResult& oracle);

/// JSON lines: {"step": i, "term": "...", "world": {...}} for every state.
std::string trace_to_jsonl(const Trace& t);

/// `(case (seed S) (fuel N) (F <term>) (alpha <term>) (world ...))`, readable
/// back by parse_case_file.
std::string case_to_sexp(const CaseSpec& c);
std::vector<CaseSpec> parse_case_file(std::string_view text);

}  // namespace boxtt
