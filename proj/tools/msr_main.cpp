#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msr/checker.hpp"
#include "msr/evaluator.hpp"
#include "msr/jsonio.hpp"
#include "msr/meaning.hpp"
#include "msr/numfmt.hpp"
#include "msr/parser.hpp"
#include "msr/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError {
    std::string message;
};

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        if (std::cin.bad()) throw IoError{"cannot read standard input"};
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError{"cannot open '" + path + "'"};
    buf << in.rdbuf();
    if (in.bad()) throw IoError{"cannot read '" + path + "'"};
    return buf.str();
}

// Results go to stdout, or to --out when given; nothing else ever writes a
// file.
void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError{"cannot open '" + out_path + "' for writing"};
    out << text;
    if (!out) throw IoError{"cannot write '" + out_path + "'"};
}

void print_diagnostics(const std::vector<msr::Diagnostic>& diags, const std::string& source) {
    if (!diags.empty()) std::cerr << msr::format_diagnostics(diags, source);
}

// Registry files share the program grammar; only the declarations count
// here, so a registry file may also carry bindings and checks.
msr::Registry registry_from_source(const std::string& source,
                                   std::vector<msr::Diagnostic>& diags) {
    msr::ParseResult parsed = msr::parse_program(source);
    diags = parsed.diagnostics;
    msr::Registry reg;
    for (const msr::Stmt& stmt : parsed.program.statements) {
        try {
            if (const auto* fam = std::get_if<msr::FamilyDecl>(&stmt.node)) {
                reg.register_family(fam->name, fam->kind, fam->owner);
            } else if (const auto* sc = std::get_if<msr::ScaleDecl>(&stmt.node)) {
                reg.register_scale(sc->name, sc->family, sc->offset.value_or(0.0),
                                   sc->factor.value_or(1.0));
            }
        } catch (const msr::MsrError& e) {
            diags.push_back(
                msr::Diagnostic{e.code(), e.what(), stmt.span, msr::Severity::Error});
        }
    }
    return reg;
}

std::string human_quantity(const msr::Quantity& q) { return q.to_string(); }

int run_check(const std::string& file, bool json, const std::string& out_path, bool evaluate) {
    std::string source = read_input(file);
    msr::ParseResult parsed = msr::parse_program(source);
    std::vector<msr::Diagnostic> diags = parsed.diagnostics;
    std::vector<msr::EvalResult> results;

    if (!msr::has_errors(diags)) {
        msr::CheckedProgram checked = msr::check_program(std::move(parsed.program));
        diags.insert(diags.end(), checked.diagnostics.begin(), checked.diagnostics.end());
        if (evaluate && !msr::has_errors(diags)) {
            msr::EvalOutcome outcome = msr::evaluate_program(checked);
            diags.insert(diags.end(), outcome.diagnostics.begin(), outcome.diagnostics.end());
            results = std::move(outcome.results);
        }
    }

    if (json) {
        write_output(out_path, msr::json_text(msr::program_json(diags, results)));
    } else {
        print_diagnostics(diags, source);
        std::string text;
        for (const msr::EvalResult& r : results) {
            text += "#" + std::to_string(r.stmt_index);
            if (r.kind == msr::ResultKind::Check) {
                text += " check: " + human_quantity(r.value);
            } else {
                text += " assert: ";
                text += r.passed ? "pass" : "fail";
                text += " (left: " + msr::format_double(r.value.value) + ")";
            }
            text += '\n';
        }
        write_output(out_path, text);
    }
    return msr::has_errors(diags) ? kExitDiagnostics : kExitOk;
}

int run_convert(double value, const std::string& from, const std::string& to,
                const std::string& registry_file, bool difference, bool json,
                const std::string& out_path) {
    std::string source = read_input(registry_file);
    std::vector<msr::Diagnostic> diags;
    msr::Registry reg = registry_from_source(source, diags);
    if (msr::has_errors(diags)) {
        print_diagnostics(diags, source);
        return kExitDiagnostics;
    }
    try {
        msr::Quantity q = difference ? reg.make_difference(value, from)
                                     : reg.make_point(value, from);
        msr::Quantity converted = reg.convert(q, to);
        if (json) {
            write_output(out_path,
                         msr::json_text(msr::convert_json(converted.value, from, to, difference)));
        } else {
            write_output(out_path, msr::format_double(converted.value) + "\n");
        }
    } catch (const msr::MsrError& e) {
        std::cerr << "error " << msr::error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitDiagnostics;
    }
    return kExitOk;
}

int run_stats(const std::string& csv_file, const std::string& column, const std::string& family,
              const std::string& scale, const std::string& role_text,
              const std::string& registry_file, bool json, const std::string& out_path) {
    std::string registry_source = read_input(registry_file);
    std::vector<msr::Diagnostic> diags;
    msr::Registry reg = registry_from_source(registry_source, diags);
    if (msr::has_errors(diags)) {
        print_diagnostics(diags, registry_source);
        return kExitDiagnostics;
    }
    std::string csv_text = read_input(csv_file);
    msr::Role role = *msr::parse_role(role_text);
    msr::StatReport rep;
    try {
        msr::Column col = msr::load_column(csv_text, column, family, scale, role, reg);
        rep = msr::report(col, reg);
    } catch (const msr::MsrError& e) {
        std::cerr << "error " << msr::error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitDiagnostics;
    }

    if (json) {
        write_output(out_path, msr::json_text(msr::stats_json(rep)));
        return kExitOk;
    }
    std::string text = "column " + rep.column + "  family " + rep.family + "  scale " +
                       rep.scale + "  role " + msr::role_name(rep.role) +
                       "  (sample variance, divisor n-1)\n";
    for (const msr::StatEntry& e : rep.entries) {
        text += "  " + e.name + ": ";
        if (!e.ok) {
            text += "refused " + std::string(msr::error_code_name(*e.code)) + " (" + e.cite + ")";
        } else if (e.name == "zscores") {
            text += "[";
            for (std::size_t i = 0; i < e.values.size(); ++i) {
                if (i) text += ", ";
                text += msr::format_double(e.values[i]);
            }
            text += "] : scalar";
        } else {
            msr::Quantity q{e.values.front(), e.sort, e.scale};
            text += human_quantity(q);
        }
        text += '\n';
    }
    write_output(out_path, text);
    return kExitOk;
}

int run_meaningful(const std::string& file, int trials, std::uint64_t seed, double tolerance,
                   bool json, const std::string& out_path) {
    std::string source = read_input(file);
    msr::ParseResult parsed = msr::parse_program(source);
    if (!parsed.ok()) {
        if (json) {
            write_output(out_path, msr::json_text(msr::program_json(parsed.diagnostics, {})));
        } else {
            print_diagnostics(parsed.diagnostics, source);
        }
        return kExitDiagnostics;
    }
    msr::CheckedProgram checked = msr::check_program(std::move(parsed.program));
    msr::SurveyResult survey = msr::survey_program(checked, trials, seed, tolerance);

    std::vector<msr::Diagnostic> diags = checked.diagnostics;
    diags.insert(diags.end(), survey.diagnostics.begin(), survey.diagnostics.end());

    if (json) {
        msr::SurveyResult merged = survey;
        merged.diagnostics = std::move(diags);
        write_output(out_path, msr::json_text(msr::survey_json(merged)));
        return kExitOk;
    }
    print_diagnostics(diags, source);
    std::string text;
    for (const msr::StatementVerdict& v : survey.statements) {
        text += "#" + std::to_string(v.stmt_index) + " " + v.text + " [" +
                msr::eval_mode_name(v.mode) + "]: " + msr::meaning_status_name(v.verdict.status) +
                " (" + std::to_string(v.verdict.trials) + " trials)";
        if (v.verdict.witness) {
            const msr::Witness& w = *v.verdict.witness;
            auto primary = w.transforms.find(w.primary_family);
            text += "\n    witness: family " + w.primary_family;
            if (primary != w.transforms.end()) {
                text += ", p = " + msr::format_double(primary->second.offset) +
                        ", q = " + msr::format_double(primary->second.factor);
            }
            text += ", y = " + msr::format_double(w.y) +
                    ", y' = " + msr::format_double(w.y_transformed) +
                    ", deviation = " + msr::format_double(w.deviation);
        }
        text += '\n';
    }
    write_output(out_path, text);
    return kExitOk;
}

int run_export(const std::string& file, const std::string& out_path) {
    std::string source = read_input(file);
    std::vector<msr::Diagnostic> diags;
    msr::Registry reg = registry_from_source(source, diags);
    if (msr::has_errors(diags)) {
        print_diagnostics(diags, source);
        return kExitDiagnostics;
    }
    write_output(out_path, msr::json_text(msr::registry_json(reg)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"admissible operations on scale values: check, evaluate, convert, survey"};
    app.require_subcommand(1);

    int rc = kExitOk;

    std::string file;
    std::string out_path;
    bool json = false;

    CLI::App* check = app.add_subcommand("check", "parse and sort-check a program");
    check->add_option("file", file, "program file, or - for stdin")->required();
    check->add_flag("--json", json, "machine-readable output");
    check->add_option("--out", out_path, "write output to this path");
    check->callback([&] { rc = run_check(file, json, out_path, false); });

    CLI::App* eval = app.add_subcommand("eval", "check and then run checks and asserts");
    eval->add_option("file", file, "program file, or - for stdin")->required();
    eval->add_flag("--json", json, "machine-readable output");
    eval->add_option("--out", out_path, "write output to this path");
    eval->callback([&] { rc = run_check(file, json, out_path, true); });

    double value = 0.0;
    std::string from, to, registry_file;
    bool difference = false;
    CLI::App* convert = app.add_subcommand("convert", "convert one reading between scales");
    convert->add_option("value", value, "the reading to convert")->required();
    convert->add_option("--from", from, "source scale")->required();
    convert->add_option("--to", to, "target scale")->required();
    convert->add_option("--registry", registry_file, "file declaring families and scales")
        ->required();
    convert->add_flag("--difference", difference,
                      "convert a difference (factor-only rule) instead of a point");
    convert->add_flag("--json", json, "machine-readable output");
    convert->add_option("--out", out_path, "write output to this path");
    convert->callback(
        [&] { rc = run_convert(value, from, to, registry_file, difference, json, out_path); });

    std::string column, family, scale, role_text;
    CLI::App* stats = app.add_subcommand("stats", "admissible statistics over a CSV column");
    stats->add_option("file", file, "CSV file, or - for stdin")->required();
    stats->add_option("--column", column, "header name of the column")->required();
    stats->add_option("--family", family, "family the readings measure")->required();
    stats->add_option("--scale", scale, "scale the readings are on")->required();
    stats->add_option("--role", role_text, "point or difference")
        ->required()
        ->check(CLI::IsMember({"point", "difference"}));
    stats->add_option("--registry", registry_file, "file declaring families and scales")
        ->required();
    stats->add_flag("--json", json, "machine-readable output");
    stats->add_option("--out", out_path, "write output to this path");
    stats->callback([&] {
        rc = run_stats(file, column, family, scale, role_text, registry_file, json, out_path);
    });

    int trials = 100;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    CLI::App* meaningful =
        app.add_subcommand("meaningful", "survey checks and asserts for invariance");
    meaningful->add_option("file", file, "program file, or - for stdin")->required();
    meaningful->add_option("--trials", trials, "re-descriptions per statement")
        ->check(CLI::PositiveNumber);
    meaningful->add_option("--seed", seed, "root seed for the trial stream");
    meaningful->add_option("--tolerance", tolerance, "deviation threshold");
    meaningful->add_flag("--json", json, "machine-readable output");
    meaningful->add_option("--out", out_path, "write output to this path");
    meaningful->callback(
        [&] { rc = run_meaningful(file, trials, seed, tolerance, json, out_path); });

    CLI::App* export_registry =
        app.add_subcommand("export-registry", "emit the declared registry as JSON");
    export_registry->add_option("file", file, "program file, or - for stdin")->required();
    export_registry->add_option("--out", out_path, "write output to this path");
    export_registry->callback([&] { rc = run_export(file, out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitIo;
    }
    return rc;
}
