#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msr/ast.hpp"
#include "msr/diagnostics.hpp"
#include "msr/registry.hpp"

namespace msr {

// Name environment for inference: registry plus the sorts of bound names.
// A binding whose defining expression failed to check is poisoned; uses of
// it stay silent so one mistake is reported once.
struct SortEnv {
    const Registry* registry = nullptr;
    std::map<std::string, std::optional<Sort>> bindings;  // nullopt = poisoned
};

struct InferOutcome {
    std::optional<Sort> sort;          // engaged on success
    std::optional<Diagnostic> diag;    // engaged on a fresh error
    bool poisoned = false;             // error already reported upstream

    bool ok() const { return sort.has_value(); }
};

// Static sort of an expression, or the table's error code anchored at the
// offending operator.
InferOutcome infer_sort(const Expr& expr, const SortEnv& env);

// A whole program, checked: declarations loaded into a registry, every
// statement sort-checked. A sort error in one statement does not stop the
// checking of later ones.
struct CheckedProgram {
    Program program;
    Registry registry;
    std::vector<Diagnostic> diagnostics;
    std::map<std::string, std::optional<Sort>> binding_sorts;
    std::vector<std::optional<Sort>> statement_sorts;  // per statement; lets/checks/assert lhs

    bool ok() const { return !has_errors(diagnostics); }

    SortEnv env() const { return SortEnv{&registry, binding_sorts}; }
};

CheckedProgram check_program(Program program);

}  // namespace msr
