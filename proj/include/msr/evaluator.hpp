#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "msr/checker.hpp"
#include "msr/quantity.hpp"

namespace msr {

// Runtime failure carrying the source position it belongs to.
class EvalError : public MsrError {
public:
    EvalError(ErrorCode code, const std::string& message, Span span)
        : MsrError(code, message), span_(span) {}

    Span span() const { return span_; }

private:
    Span span_;
};

// Bindings hold reference-scale readings, so every operation sees operands
// of one family on one scale.
using EvalEnv = std::map<std::string, Quantity>;

// Evaluates one expression; family-bearing literals are rewritten to the
// family reference scale on the way in. Throws EvalError.
Quantity evaluate_expr(const Expr& expr, const Registry& reg, const EvalEnv& env);

// Same walk, but every family-bearing leaf (unit literal or bound name) is
// passed through `leaf` before it enters the algebra. The meaningfulness
// oracle uses this to re-describe inputs without touching the evaluator.
Quantity evaluate_expr_with(const Expr& expr, const Registry& reg, const EvalEnv& env,
                            const std::function<Quantity(const Quantity&)>& leaf);

enum class ResultKind { Check, Assert };

struct EvalResult {
    std::size_t stmt_index = 0;  // position in Program::statements
    ResultKind kind = ResultKind::Check;
    Quantity value;    // assert rows carry the left-hand side
    bool passed = true;  // asserts only
};

struct EvalOutcome {
    std::vector<EvalResult> results;
    std::vector<Diagnostic> diagnostics;
    EvalEnv env;  // final bindings

    bool ok() const { return !has_errors(diagnostics); }
};

// Runs a cleanly checked program in statement order. A failed assert is
// recorded and evaluation continues; the first hard runtime error (zero
// divisor, bad mix weights, overflow) stops it, since later statements
// could reference a binding that never got a value.
EvalOutcome evaluate_program(const CheckedProgram& checked);

}  // namespace msr
