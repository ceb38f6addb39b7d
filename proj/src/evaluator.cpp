#include "msr/evaluator.hpp"

#include <cmath>
#include <type_traits>

#include "msr/numfmt.hpp"
#include "msr/ops.hpp"

namespace msr {

namespace {

[[noreturn]] void rethrow_at(const MsrError& e, Span span) {
    if (const auto* positioned = dynamic_cast<const EvalError*>(&e)) {
        throw EvalError(positioned->code(), positioned->what(), positioned->span());
    }
    throw EvalError(e.code(), e.what(), span);
}

bool compare_values(CmpOp op, double lhs, double rhs) {
    switch (op) {
        case CmpOp::Eq: return approx_equal(lhs, rhs, 1e-9, 1e-12);
        case CmpOp::Ne: return !approx_equal(lhs, rhs, 1e-9, 1e-12);
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Gt: return lhs > rhs;
        case CmpOp::Ge: return lhs >= rhs;
    }
    return false;
}

}  // namespace

Quantity evaluate_expr_with(const Expr& expr, const Registry& reg, const EvalEnv& env,
                            const std::function<Quantity(const Quantity&)>& leaf) {
    return std::visit(
        [&](const auto& node) -> Quantity {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                try {
                    switch (node.unit) {
                        case LiteralUnit::None: return Quantity::scalar(node.value);
                        case LiteralUnit::Point:
                            return leaf(reg.to_reference(reg.make_point(node.value, node.scale)));
                        case LiteralUnit::Difference:
                            return leaf(
                                reg.to_reference(reg.make_difference(node.value, node.scale)));
                    }
                    throw MsrError(ErrorCode::Eval, "bad literal unit");
                } catch (const MsrError& e) {
                    rethrow_at(e, expr.span);
                }
            } else if constexpr (std::is_same_v<T, NameRef>) {
                auto it = env.find(node.name);
                if (it == env.end()) {
                    throw EvalError(ErrorCode::UnboundName,
                                    "name '" + node.name + "' has no value", expr.span);
                }
                return it->second.sort.is_scalar() ? it->second : leaf(it->second);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                Quantity lhs = evaluate_expr_with(*node.lhs, reg, env, leaf);
                Quantity rhs = evaluate_expr_with(*node.rhs, reg, env, leaf);
                try {
                    return apply_binary(reg, node.op, lhs, rhs);
                } catch (const MsrError& e) {
                    rethrow_at(e, node.op_span);
                }
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                Quantity operand = evaluate_expr_with(*node.operand, reg, env, leaf);
                try {
                    return negate(operand);
                } catch (const MsrError& e) {
                    rethrow_at(e, expr.span);
                }
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                Quantity base = evaluate_expr_with(*node.base, reg, env, leaf);
                try {
                    return power_int(base, node.exponent);
                } catch (const MsrError& e) {
                    rethrow_at(e, node.op_span);
                }
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                std::vector<Quantity> args;
                args.reserve(node.args.size());
                for (const ExprPtr& arg : node.args) {
                    args.push_back(evaluate_expr_with(*arg, reg, env, leaf));
                }
                try {
                    return mix(reg, node.weights, args);
                } catch (const MsrError& e) {
                    rethrow_at(e, expr.span);
                }
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                return evaluate_expr_with(*node.inner, reg, env, leaf);
            }
        },
        expr.node);
}

Quantity evaluate_expr(const Expr& expr, const Registry& reg, const EvalEnv& env) {
    return evaluate_expr_with(expr, reg, env, [](const Quantity& q) { return q; });
}

EvalOutcome evaluate_program(const CheckedProgram& checked) {
    EvalOutcome out;
    const Registry& reg = checked.registry;
    for (std::size_t i = 0; i < checked.program.statements.size(); ++i) {
        const Stmt& stmt = checked.program.statements[i];
        try {
            std::visit(
                [&](const auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, LetStmt>) {
                        out.env.insert_or_assign(node.name,
                                                 evaluate_expr(node.expr, reg, out.env));
                    } else if constexpr (std::is_same_v<T, CheckStmt>) {
                        out.results.push_back(EvalResult{
                            i, ResultKind::Check, evaluate_expr(node.expr, reg, out.env), true});
                    } else if constexpr (std::is_same_v<T, AssertStmt>) {
                        Quantity lhs = evaluate_expr(node.lhs, reg, out.env);
                        Quantity rhs = evaluate_expr(node.rhs, reg, out.env);
                        bool passed = compare_values(node.op, lhs.value, rhs.value);
                        out.results.push_back(EvalResult{i, ResultKind::Assert, lhs, passed});
                        if (!passed) {
                            out.diagnostics.push_back(Diagnostic{
                                ErrorCode::AssertFailed,
                                "assertion failed: left is " + format_double(lhs.value) +
                                    ", right is " + format_double(rhs.value),
                                node.op_span, Severity::Error});
                        }
                    }
                    // family/scale declarations already live in the registry
                },
                stmt.node);
        } catch (const EvalError& e) {
            out.diagnostics.push_back(Diagnostic{e.code(), e.what(), e.span(), Severity::Error});
            break;
        }
    }
    return out;
}

}  // namespace msr
