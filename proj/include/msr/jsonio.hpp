#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "msr/checker.hpp"
#include "msr/evaluator.hpp"
#include "msr/meaning.hpp"
#include "msr/stats.hpp"

namespace msr {

// Key order is part of the wire format, hence ordered_json throughout.
using ordered_json = nlohmann::ordered_json;

ordered_json sort_json(const Sort& sort);
ordered_json diagnostics_json(const std::vector<Diagnostic>& diags);

// {status, diagnostics, results} - the one document shape for check (no
// results) and eval (with them).
ordered_json program_json(const std::vector<Diagnostic>& diags,
                          const std::vector<EvalResult>& results);

ordered_json survey_json(const SurveyResult& survey);
ordered_json stats_json(const StatReport& report);
ordered_json registry_json(const Registry& reg);
ordered_json convert_json(double value, const std::string& from, const std::string& to,
                          bool difference);

// dump(2) with a trailing newline; every byte of output flows through here.
std::string json_text(const ordered_json& doc);

}  // namespace msr
