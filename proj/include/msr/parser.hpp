#pragma once

#include <string_view>
#include <vector>

#include "msr/ast.hpp"
#include "msr/diagnostics.hpp"

namespace msr {

// Outcome of a parse. With recovery the parser reports every syntax error
// in one pass and still returns the statements it could read.
struct ParseResult {
    Program program;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

ParseResult parse_program(std::string_view source);

}  // namespace msr
