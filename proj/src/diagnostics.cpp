#include "msr/diagnostics.hpp"

#include <algorithm>
#include <cstring>

namespace msr {

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

namespace {

std::string_view line_text(std::string_view source, int line) {
    int current = 1;
    std::size_t start = 0;
    while (current < line) {
        std::size_t nl = source.find('\n', start);
        if (nl == std::string_view::npos) return {};
        start = nl + 1;
        ++current;
    }
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view text = source.substr(start, end - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    return text;
}

}  // namespace

std::string format_diagnostics(std::vector<Diagnostic> diags, std::string_view source) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.line != b.span.line) return a.span.line < b.span.line;
        if (a.span.col != b.span.col) return a.span.col < b.span.col;
        return std::strcmp(error_code_name(a.code), error_code_name(b.code)) < 0;
    });

    std::string out;
    for (const Diagnostic& d : diags) {
        std::string_view text = line_text(source, d.span.line);
        out += "  ";
        out += text;
        out += "\n  ";
        int col = std::min<int>(d.span.col, static_cast<int>(text.size()));
        for (int i = 0; i < col; ++i) out += (i < (int)text.size() && text[i] == '\t') ? '\t' : ' ';
        out += '^';
        for (int i = 1; i < d.span.len && col + i < (int)text.size(); ++i) out += '~';
        out += '\n';
        out += (d.severity == Severity::Error) ? "error " : "warning ";
        out += error_code_name(d.code);
        out += " (line ";
        out += std::to_string(d.span.line);
        out += ", col ";
        out += std::to_string(d.span.col);
        out += "): ";
        out += d.message;
        out += '\n';
    }
    return out;
}

}  // namespace msr
