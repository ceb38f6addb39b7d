#include "msr/checker.hpp"

#include "msr/ops.hpp"

namespace msr {

namespace {

InferOutcome success(Sort sort) { return InferOutcome{std::move(sort), std::nullopt, false}; }

InferOutcome poisoned() { return InferOutcome{std::nullopt, std::nullopt, true}; }

InferOutcome error(ErrorCode code, std::string message, Span span) {
    return InferOutcome{std::nullopt,
                        Diagnostic{code, std::move(message), span, Severity::Error}, false};
}

InferOutcome literal_sort(const NumberLit& lit, const Span& span, const Registry& reg) {
    if (lit.unit == LiteralUnit::None) return success(Sort::scalar());
    const Scale* scale = reg.find_scale(lit.scale);
    if (!scale) {
        return error(ErrorCode::UnknownScale, "unknown scale '" + lit.scale + "'", span);
    }
    const Family& fam = reg.family(scale->family);
    if (lit.unit == LiteralUnit::Point) {
        if (fam.kind != FamilyKind::Affine) {
            return error(ErrorCode::RoleKind,
                         "point readings need an affine family; '" + fam.name + "' is " +
                             family_kind_name(fam.kind),
                         span);
        }
        return success(Sort::point(fam.name));
    }
    return success(Sort::power_of(fam.name, 1));
}

}  // namespace

InferOutcome infer_sort(const Expr& expr, const SortEnv& env) {
    const Registry& reg = *env.registry;
    return std::visit(
        [&](const auto& node) -> InferOutcome {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                return literal_sort(node, expr.span, reg);
            } else if constexpr (std::is_same_v<T, NameRef>) {
                auto it = env.bindings.find(node.name);
                if (it == env.bindings.end()) {
                    return error(ErrorCode::UnboundName, "unbound name '" + node.name + "'",
                                 expr.span);
                }
                if (!it->second) return poisoned();
                return success(*it->second);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                InferOutcome lhs = infer_sort(*node.lhs, env);
                if (!lhs.ok()) return lhs;
                InferOutcome rhs = infer_sort(*node.rhs, env);
                if (!rhs.ok()) return rhs;
                auto outcome = binary_result_sort(node.op, *lhs.sort, *rhs.sort);
                if (std::holds_alternative<ErrorCode>(outcome)) {
                    ErrorCode code = std::get<ErrorCode>(outcome);
                    std::string msg;
                    switch (code) {
                        case ErrorCode::PointRatio:
                            msg = "ratio involving a point is undefined";
                            break;
                        case ErrorCode::PointSum:
                            msg = "operation not defined on points";
                            break;
                        case ErrorCode::FamilyMix:
                            msg = "operands belong to different families";
                            break;
                        default: msg = "additive operands must share the same grade"; break;
                    }
                    msg += " (left: " + lhs.sort->to_string() +
                           ", right: " + rhs.sort->to_string() + ")";
                    return error(code, msg, node.op_span);
                }
                return success(std::get<Sort>(outcome));
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                InferOutcome inner = infer_sort(*node.operand, env);
                if (!inner.ok()) return inner;
                if (inner.sort->is_point()) {
                    return error(ErrorCode::PointNegate,
                                 "a point cannot be negated; subtract it from another point",
                                 expr.span);
                }
                return inner;
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                InferOutcome base = infer_sort(*node.base, env);
                if (!base.ok()) return base;
                if (base.sort->is_point()) {
                    return error(ErrorCode::PointPower, "a point cannot be raised to a power",
                                 node.op_span);
                }
                if (base.sort->is_scalar()) return success(Sort::scalar());
                return success(
                    Sort::power_of(base.sort->family, base.sort->power * node.exponent));
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                std::optional<Sort> common;
                for (const ExprPtr& arg : node.args) {
                    InferOutcome got = infer_sort(*arg, env);
                    if (!got.ok()) return got;
                    if (!got.sort->is_point()) {
                        return error(ErrorCode::MixSort,
                                     "mix combines points; got " + got.sort->to_string(),
                                     arg->span);
                    }
                    if (!common) {
                        common = got.sort;
                    } else if (*common != *got.sort) {
                        return error(ErrorCode::MixSort,
                                     "mix operands must share one family (saw " +
                                         common->to_string() + " and " + got.sort->to_string() +
                                         ")",
                                     arg->span);
                    }
                }
                return success(*common);
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                return infer_sort(*node.inner, env);
            }
        },
        expr.node);
}

CheckedProgram check_program(Program program) {
    CheckedProgram out;
    out.program = std::move(program);
    out.statement_sorts.resize(out.program.statements.size());
    SortEnv env{&out.registry, {}};

    for (std::size_t i = 0; i < out.program.statements.size(); ++i) {
        const Stmt& stmt = out.program.statements[i];
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, FamilyDecl>) {
                    try {
                        out.registry.register_family(node.name, node.kind, node.owner);
                    } catch (const MsrError& e) {
                        out.diagnostics.push_back(
                            Diagnostic{e.code(), e.what(), stmt.span, Severity::Error});
                    }
                } else if constexpr (std::is_same_v<T, ScaleDecl>) {
                    try {
                        out.registry.register_scale(node.name, node.family,
                                                    node.offset.value_or(0.0),
                                                    node.factor.value_or(1.0));
                    } catch (const MsrError& e) {
                        out.diagnostics.push_back(
                            Diagnostic{e.code(), e.what(), stmt.span, Severity::Error});
                    }
                } else if constexpr (std::is_same_v<T, LetStmt>) {
                    if (env.bindings.count(node.name)) {
                        out.diagnostics.push_back(Diagnostic{
                            ErrorCode::Rebind, "name '" + node.name + "' is already bound",
                            node.name_span, Severity::Error});
                        return;
                    }
                    InferOutcome got = infer_sort(node.expr, env);
                    if (got.diag) out.diagnostics.push_back(*got.diag);
                    env.bindings[node.name] = got.sort;
                    out.statement_sorts[i] = got.sort;
                } else if constexpr (std::is_same_v<T, CheckStmt>) {
                    InferOutcome got = infer_sort(node.expr, env);
                    if (got.diag) out.diagnostics.push_back(*got.diag);
                    out.statement_sorts[i] = got.sort;
                } else {
                    static_assert(std::is_same_v<T, AssertStmt>);
                    InferOutcome lhs = infer_sort(node.lhs, env);
                    if (lhs.diag) out.diagnostics.push_back(*lhs.diag);
                    InferOutcome rhs = infer_sort(node.rhs, env);
                    if (rhs.diag) out.diagnostics.push_back(*rhs.diag);
                    if (lhs.ok() && rhs.ok()) {
                        if (*lhs.sort != *rhs.sort) {
                            out.diagnostics.push_back(Diagnostic{
                                ErrorCode::CmpSort,
                                "comparison needs both sides of one sort (left: " +
                                    lhs.sort->to_string() + ", right: " + rhs.sort->to_string() +
                                    ")",
                                node.op_span, Severity::Error});
                        } else {
                            out.statement_sorts[i] = lhs.sort;
                        }
                    }
                }
            },
            stmt.node);
    }
    out.binding_sorts = std::move(env.bindings);
    return out;
}

}  // namespace msr
