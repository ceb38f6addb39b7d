#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msr/errors.hpp"

namespace msr {

// Half-open byte region of the source. Lines are 1-based, columns 0-based.
struct Span {
    int line = 1;
    int col = 0;
    int len = 1;
    std::size_t offset = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    ErrorCode code = ErrorCode::Syntax;
    std::string message;
    Span span{};
    Severity severity = Severity::Error;
};

bool has_errors(const std::vector<Diagnostic>& diags);

// One block per diagnostic: the source line, a caret underline, then the
// code and message. Ordered by (line, col, code). Deterministic.
std::string format_diagnostics(std::vector<Diagnostic> diags, std::string_view source);

}  // namespace msr
