#include "msr/jsonio.hpp"

#include "msr/numfmt.hpp"

namespace msr {

ordered_json sort_json(const Sort& sort) {
    ordered_json out;
    switch (sort.tag) {
        case SortTag::Scalar: out["tag"] = "scalar"; break;
        case SortTag::Point:
            out["tag"] = "point";
            out["family"] = sort.family;
            break;
        case SortTag::Power:
            out["tag"] = "power";
            out["family"] = sort.family;
            out["power"] = sort.power;
            break;
    }
    return out;
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& diags) {
    ordered_json out = ordered_json::array();
    for (const Diagnostic& d : diags) {
        ordered_json row;
        row["code"] = error_code_name(d.code);
        row["severity"] = d.severity == Severity::Error ? "error" : "warning";
        row["message"] = d.message;
        row["line"] = d.span.line;
        row["col"] = d.span.col;
        row["len"] = d.span.len;
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json program_json(const std::vector<Diagnostic>& diags,
                          const std::vector<EvalResult>& results) {
    ordered_json out;
    out["status"] = has_errors(diags) ? "error" : "ok";
    out["diagnostics"] = diagnostics_json(diags);
    ordered_json rows = ordered_json::array();
    for (const EvalResult& r : results) {
        ordered_json row;
        row["stmt_index"] = r.stmt_index;
        row["kind"] = r.kind == ResultKind::Check ? "check" : "assert";
        row["sort"] = sort_json(r.value.sort);
        row["value"] = r.value.value;
        if (!r.value.sort.is_scalar()) row["scale"] = r.value.scale;
        if (r.kind == ResultKind::Assert) row["passed"] = r.passed;
        rows.push_back(std::move(row));
    }
    out["results"] = std::move(rows);
    return out;
}

ordered_json survey_json(const SurveyResult& survey) {
    ordered_json out;
    out["status"] = "ok";
    out["diagnostics"] = diagnostics_json(survey.diagnostics);
    ordered_json rows = ordered_json::array();
    for (const StatementVerdict& v : survey.statements) {
        ordered_json row;
        row["stmt_index"] = v.stmt_index;
        row["statement"] = v.text;
        row["mode"] = eval_mode_name(v.mode);
        row["status"] = meaning_status_name(v.verdict.status);
        row["trials"] = v.verdict.trials;
        if (v.verdict.witness) {
            const Witness& w = *v.verdict.witness;
            ordered_json witness;
            witness["family"] = w.primary_family;
            auto primary = w.transforms.find(w.primary_family);
            if (primary != w.transforms.end()) {
                witness["p"] = primary->second.offset;
                witness["q"] = primary->second.factor;
            }
            witness["y"] = w.y;
            witness["y_transformed"] = w.y_transformed;
            witness["deviation"] = w.deviation;
            witness["trial"] = w.trial;
            if (w.transforms.size() > 1) {
                ordered_json others = ordered_json::array();
                for (const auto& [family, t] : w.transforms) {
                    if (family == w.primary_family) continue;
                    ordered_json other;
                    other["family"] = family;
                    other["p"] = t.offset;
                    other["q"] = t.factor;
                    others.push_back(std::move(other));
                }
                witness["others"] = std::move(others);
            }
            row["witness"] = std::move(witness);
        }
        rows.push_back(std::move(row));
    }
    out["statements"] = std::move(rows);
    return out;
}

ordered_json stats_json(const StatReport& report) {
    ordered_json out;
    out["column"] = report.column;
    out["family"] = report.family;
    out["scale"] = report.scale;
    out["role"] = role_name(report.role);
    ordered_json rows = ordered_json::array();
    for (const StatEntry& e : report.entries) {
        ordered_json row;
        row["name"] = e.name;
        row["status"] = e.ok ? "ok" : "refused";
        if (e.ok) {
            row["sort"] = sort_json(e.sort);
            if (e.name == "zscores") {
                row["value"] = e.values;
            } else {
                row["value"] = e.values.front();
            }
            if (!e.scale.empty()) row["scale"] = e.scale;
        } else {
            row["code"] = error_code_name(*e.code);
            row["cite"] = e.cite;
        }
        rows.push_back(std::move(row));
    }
    out["stats"] = std::move(rows);
    return out;
}

ordered_json registry_json(const Registry& reg) {
    ordered_json out;
    ordered_json families = ordered_json::array();
    for (const Family& f : reg.families()) {
        ordered_json row;
        row["name"] = f.name;
        row["kind"] = family_kind_name(f.kind);
        if (f.owner) row["owner"] = *f.owner;
        families.push_back(std::move(row));
    }
    out["families"] = std::move(families);
    ordered_json scales = ordered_json::array();
    for (const Scale& s : reg.scales()) {
        ordered_json row;
        row["name"] = s.name;
        row["family"] = s.family;
        row["offset"] = format_double_17(s.offset);
        row["factor"] = format_double_17(s.factor);
        scales.push_back(std::move(row));
    }
    out["scales"] = std::move(scales);
    return out;
}

ordered_json convert_json(double value, const std::string& from, const std::string& to,
                          bool difference) {
    ordered_json out;
    out["value"] = value;
    out["from"] = from;
    out["to"] = to;
    out["difference"] = difference;
    return out;
}

std::string json_text(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace msr
