#include "msr/meaning.hpp"

#include <cmath>
#include <set>
#include <type_traits>
#include <utility>

#include "msr/numfmt.hpp"
#include "msr/ops.hpp"
#include "msr/rng.hpp"

namespace msr {

namespace {

// Sort action of `sort` under the re-descriptions in `ts`; doubles as the
// raw leaf-transform rule.
double apply_action(const Sort& sort, const FamilyTransforms& ts, double x) {
    if (sort.tag == SortTag::Scalar) return x;
    auto it = ts.find(sort.family);
    if (it == ts.end()) return x;
    const Transformation& t = it->second;
    if (sort.tag == SortTag::Point) return t.offset + t.factor * x;
    return int_pow(t.factor, sort.power) * x;
}

Sort literal_sort(const NumberLit& lit, const Registry& reg) {
    switch (lit.unit) {
        case LiteralUnit::None: return Sort::scalar();
        case LiteralUnit::Point: return Sort::point(reg.scale(lit.scale).family);
        case LiteralUnit::Difference: return Sort::power_of(reg.scale(lit.scale).family, 1);
    }
    return Sort::scalar();
}

// Plain field arithmetic over the readings as written. Sorts only matter
// at the leaves, where they pick the transform each reading receives.
double eval_raw(const Expr& expr, const MeaningContext& ctx, const FamilyTransforms& ts) {
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                return apply_action(literal_sort(node, *ctx.registry), ts, node.value);
            } else if constexpr (std::is_same_v<T, NameRef>) {
                auto it = ctx.raw.find(node.name);
                if (it == ctx.raw.end()) {
                    throw EvalError(ErrorCode::UnboundName,
                                    "name '" + node.name + "' has no value", expr.span);
                }
                return apply_action(it->second.sort, ts, it->second.value);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                double lhs = eval_raw(*node.lhs, ctx, ts);
                double rhs = eval_raw(*node.rhs, ctx, ts);
                switch (node.op) {
                    case BinOp::Add: return lhs + rhs;
                    case BinOp::Sub: return lhs - rhs;
                    case BinOp::Mul: return lhs * rhs;
                    case BinOp::Div:
                        if (rhs == 0.0) {
                            throw EvalError(ErrorCode::DivZero, "division by zero",
                                            node.op_span);
                        }
                        return lhs / rhs;
                }
                return 0.0;
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                return -eval_raw(*node.operand, ctx, ts);
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                double base = eval_raw(*node.base, ctx, ts);
                if (node.exponent < 0 && base == 0.0) {
                    throw EvalError(ErrorCode::DivZero,
                                    "zero cannot be raised to a negative power", node.op_span);
                }
                return int_pow(base, node.exponent);
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < node.args.size(); ++i) {
                    acc += node.weights[i] * eval_raw(*node.args[i], ctx, ts);
                }
                return acc;
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                return eval_raw(*node.inner, ctx, ts);
            }
        },
        expr.node);
}

Quantity transform_leaf(const Quantity& q, const FamilyTransforms& ts) {
    if (q.sort.tag == SortTag::Scalar) return q;
    auto it = ts.find(q.sort.family);
    if (it == ts.end()) return q;
    return apply_transformation(it->second, q);
}

void collect_families(const Expr& expr, const MeaningContext& ctx, std::set<std::string>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                if (node.unit != LiteralUnit::None) {
                    if (const Scale* s = ctx.registry->find_scale(node.scale)) {
                        out.insert(s->family);
                    }
                }
            } else if constexpr (std::is_same_v<T, NameRef>) {
                Sort sort;
                if (ctx.mode == EvalMode::Typed) {
                    auto it = ctx.typed.find(node.name);
                    if (it == ctx.typed.end()) return;
                    sort = it->second.sort;
                } else {
                    auto it = ctx.raw.find(node.name);
                    if (it == ctx.raw.end()) return;
                    sort = it->second.sort;
                }
                if (sort.tag != SortTag::Scalar) out.insert(sort.family);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                collect_families(*node.lhs, ctx, out);
                collect_families(*node.rhs, ctx, out);
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                collect_families(*node.operand, ctx, out);
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                collect_families(*node.base, ctx, out);
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                for (const ExprPtr& arg : node.args) collect_families(*arg, ctx, out);
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                collect_families(*node.inner, ctx, out);
            }
        },
        expr.node);
}

struct TrialOutcome {
    double y = 0.0;
    double y_transformed = 0.0;
    double deviation = 0.0;
};

TrialOutcome run_trial(const Expr& expr, const MeaningContext& ctx, const FamilyTransforms& ts,
                       const Sort& expected) {
    TrialOutcome out;
    if (ctx.mode == EvalMode::Typed) {
        const Registry& reg = *ctx.registry;
        out.y = evaluate_expr(expr, reg, ctx.typed).value;
        out.y_transformed =
            evaluate_expr_with(expr, reg, ctx.typed,
                               [&](const Quantity& q) { return transform_leaf(q, ts); })
                .value;
    } else {
        out.y = eval_raw(expr, ctx, FamilyTransforms{});
        out.y_transformed = eval_raw(expr, ctx, ts);
    }
    double acted = apply_action(expected, ts, out.y);
    if (!std::isfinite(out.y) || !std::isfinite(out.y_transformed) || !std::isfinite(acted)) {
        throw EvalError(ErrorCode::Overflow, "trial output is not finite", expr.span);
    }
    out.deviation = std::fabs(out.y_transformed - acted) / std::fmax(std::fabs(acted), 1e-3);
    return out;
}

}  // namespace

const char* eval_mode_name(EvalMode mode) {
    return mode == EvalMode::Typed ? "typed" : "raw";
}

const char* meaning_status_name(MeaningStatus status) {
    switch (status) {
        case MeaningStatus::Meaningful: return "meaningful";
        case MeaningStatus::NotMeaningful: return "not_meaningful";
        case MeaningStatus::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

std::vector<std::string> involved_families(const Expr& expr, const MeaningContext& ctx) {
    std::set<std::string> families;
    collect_families(expr, ctx, families);
    return std::vector<std::string>(families.begin(), families.end());
}

Sort expected_sort(const Expr& expr, const MeaningContext& ctx) {
    SortEnv env;
    env.registry = ctx.registry;
    if (ctx.mode == EvalMode::Typed) {
        for (const auto& [name, q] : ctx.typed) env.bindings[name] = q.sort;
    } else {
        for (const auto& [name, b] : ctx.raw) env.bindings[name] = b.sort;
    }
    InferOutcome got = infer_sort(expr, env);
    if (got.ok()) return *got.sort;
    if (ctx.mode == EvalMode::Typed) {
        throw EvalError(got.diag ? got.diag->code : ErrorCode::Eval,
                        "expression does not sort-check", expr.span);
    }
    return Sort::scalar();
}

double check_trial(const Expr& expr, const MeaningContext& ctx, const FamilyTransforms& ts) {
    return run_trial(expr, ctx, ts, expected_sort(expr, ctx)).deviation;
}

MeaningVerdict check_meaningful(const Expr& expr, const MeaningContext& ctx, int n_trials,
                                std::uint64_t seed, double tolerance) {
    MeaningVerdict out;
    Sort expected;
    std::vector<std::string> families;
    try {
        expected = expected_sort(expr, ctx);
        families = involved_families(expr, ctx);
    } catch (const MsrError&) {
        out.status = MeaningStatus::Indeterminate;
        return out;
    }

    for (int trial = 0; trial < n_trials; ++trial) {
        std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
        FamilyTransforms ts;
        for (std::size_t f = 0; f < families.size(); ++f) {
            const Family* fam = ctx.registry->find_family(families[f]);
            FamilyKind kind = fam ? fam->kind : FamilyKind::Affine;
            ts.emplace(families[f],
                       random_admissible(families[f], kind, derive_seed(trial_seed, f)));
        }

        TrialOutcome got;
        try {
            got = run_trial(expr, ctx, ts, expected);
        } catch (const MsrError&) {
            out.status = MeaningStatus::Indeterminate;
            out.trials = trial + 1;
            return out;
        }
        out.trials = trial + 1;
        if (got.deviation > tolerance) {
            Witness w;
            w.transforms = std::move(ts);
            w.primary_family = expected.tag != SortTag::Scalar ? expected.family
                               : families.empty()              ? std::string{}
                                                               : families.front();
            w.y = got.y;
            w.y_transformed = got.y_transformed;
            w.deviation = got.deviation;
            w.trial = trial;
            out.status = MeaningStatus::NotMeaningful;
            out.witness = std::move(w);
            return out;
        }
    }
    out.status = MeaningStatus::Meaningful;
    return out;
}

SurveyResult survey_program(const CheckedProgram& checked, int n_trials, std::uint64_t seed,
                            double tolerance) {
    SurveyResult out;
    const Registry& reg = checked.registry;

    // Two environments built let by let: typed reference-scale readings
    // where the binding checks and evaluates, raw as-written readings
    // wherever raw evaluation goes through.
    EvalEnv typed;
    RawEnv raw;

    for (std::size_t i = 0; i < checked.program.statements.size(); ++i) {
        const Stmt& stmt = checked.program.statements[i];
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, LetStmt>) {
                    auto found = checked.binding_sorts.find(node.name);
                    bool well =
                        found != checked.binding_sorts.end() && found->second.has_value();
                    if (well) {
                        try {
                            typed.insert_or_assign(node.name,
                                                   evaluate_expr(node.expr, reg, typed));
                        } catch (const MsrError&) {
                            // later references surface as indeterminate
                        }
                    }
                    MeaningContext raw_ctx{&reg, EvalMode::Raw, {}, raw};
                    try {
                        double value = eval_raw(node.expr, raw_ctx, FamilyTransforms{});
                        raw.insert_or_assign(node.name,
                                             RawBinding{value, expected_sort(node.expr, raw_ctx)});
                    } catch (const MsrError&) {
                    }
                } else if constexpr (std::is_same_v<T, CheckStmt> ||
                                     std::is_same_v<T, AssertStmt>) {
                    bool well = checked.statement_sorts[i].has_value();

                    Expr surveyed;
                    if constexpr (std::is_same_v<T, CheckStmt>) {
                        surveyed = clone_expr(node.expr);
                    } else {
                        // The residual left - right: defined for every sort
                        // the checker lets through a comparison, and its
                        // action carries the comparison's truth value.
                        BinaryExpr residual;
                        residual.op = BinOp::Sub;
                        residual.lhs = std::make_unique<Expr>(clone_expr(node.lhs));
                        residual.rhs = std::make_unique<Expr>(clone_expr(node.rhs));
                        residual.op_span = node.op_span;
                        surveyed.node = std::move(residual);
                        surveyed.span = stmt.span;
                    }

                    MeaningContext ctx{&reg, well ? EvalMode::Typed : EvalMode::Raw, typed, raw};
                    if (!well) {
                        out.diagnostics.push_back(Diagnostic{
                            ErrorCode::Eval,
                            "statement is not well-sorted; surveying the raw readings",
                            stmt.span, Severity::Warning});
                    }

                    StatementVerdict verdict;
                    verdict.stmt_index = i;
                    verdict.text = print_statement(stmt);
                    verdict.mode = ctx.mode;
                    verdict.verdict =
                        check_meaningful(surveyed, ctx, n_trials, derive_seed(seed, i), tolerance);
                    out.statements.push_back(std::move(verdict));
                }
            },
            stmt.node);
    }
    return out;
}

}  // namespace msr
