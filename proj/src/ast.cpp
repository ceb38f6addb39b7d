#include "msr/ast.hpp"

#include "msr/numfmt.hpp"

namespace msr {

const char* cmp_op_symbol(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "==";
}

bool ast_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const T& rhs = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, NumberLit>) {
                return lhs.value == rhs.value && lhs.unit == rhs.unit && lhs.scale == rhs.scale;
            } else if constexpr (std::is_same_v<T, NameRef>) {
                return lhs.name == rhs.name;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return lhs.op == rhs.op && ast_equal(*lhs.lhs, *rhs.lhs) &&
                       ast_equal(*lhs.rhs, *rhs.rhs);
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                return ast_equal(*lhs.operand, *rhs.operand);
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                return lhs.exponent == rhs.exponent && ast_equal(*lhs.base, *rhs.base);
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                if (lhs.weights != rhs.weights) return false;
                if (lhs.args.size() != rhs.args.size()) return false;
                for (std::size_t i = 0; i < lhs.args.size(); ++i) {
                    if (!ast_equal(*lhs.args[i], *rhs.args[i])) return false;
                }
                return true;
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                return ast_equal(*lhs.inner, *rhs.inner);
            }
        },
        a.node);
}

namespace {

bool stmt_equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const T& rhs = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, FamilyDecl>) {
                return lhs.name == rhs.name && lhs.kind == rhs.kind && lhs.owner == rhs.owner;
            } else if constexpr (std::is_same_v<T, ScaleDecl>) {
                return lhs.name == rhs.name && lhs.family == rhs.family &&
                       lhs.offset == rhs.offset && lhs.factor == rhs.factor;
            } else if constexpr (std::is_same_v<T, LetStmt>) {
                return lhs.name == rhs.name && ast_equal(lhs.expr, rhs.expr);
            } else if constexpr (std::is_same_v<T, CheckStmt>) {
                return ast_equal(lhs.expr, rhs.expr);
            } else {
                static_assert(std::is_same_v<T, AssertStmt>);
                return lhs.op == rhs.op && ast_equal(lhs.lhs, rhs.lhs) &&
                       ast_equal(lhs.rhs, rhs.rhs);
            }
        },
        a.node);
}

void print_expr_into(const Expr& expr, std::string& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                out += format_double(node.value);
                if (node.unit == LiteralUnit::Point) {
                    out += " @" + node.scale;
                } else if (node.unit == LiteralUnit::Difference) {
                    out += " d@" + node.scale;
                }
            } else if constexpr (std::is_same_v<T, NameRef>) {
                out += node.name;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                print_expr_into(*node.lhs, out);
                out += ' ';
                out += bin_op_symbol(node.op);
                out += ' ';
                print_expr_into(*node.rhs, out);
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                out += '-';
                print_expr_into(*node.operand, out);
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                print_expr_into(*node.base, out);
                out += '^';
                out += std::to_string(node.exponent);
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                out += "mix(";
                for (std::size_t i = 0; i < node.args.size(); ++i) {
                    if (i) out += ", ";
                    out += format_double(node.weights[i]);
                    out += ": ";
                    print_expr_into(*node.args[i], out);
                }
                out += ')';
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                out += '(';
                print_expr_into(*node.inner, out);
                out += ')';
            }
        },
        expr.node);
}

}  // namespace

bool ast_equal(const Program& a, const Program& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        if (!stmt_equal(a.statements[i], b.statements[i])) return false;
    }
    return true;
}

Expr clone_expr(const Expr& expr) {
    Expr out;
    out.span = expr.span;
    out.node = std::visit(
        [](const auto& node) -> ExprNode {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, NumberLit> || std::is_same_v<T, NameRef>) {
                return node;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                BinaryExpr copy;
                copy.op = node.op;
                copy.lhs = std::make_unique<Expr>(clone_expr(*node.lhs));
                copy.rhs = std::make_unique<Expr>(clone_expr(*node.rhs));
                copy.op_span = node.op_span;
                return ExprNode{std::move(copy)};
            } else if constexpr (std::is_same_v<T, NegateExpr>) {
                NegateExpr copy;
                copy.operand = std::make_unique<Expr>(clone_expr(*node.operand));
                return ExprNode{std::move(copy)};
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                PowExpr copy;
                copy.base = std::make_unique<Expr>(clone_expr(*node.base));
                copy.exponent = node.exponent;
                copy.op_span = node.op_span;
                return ExprNode{std::move(copy)};
            } else if constexpr (std::is_same_v<T, MixExpr>) {
                MixExpr copy;
                copy.weights = node.weights;
                copy.args.reserve(node.args.size());
                for (const ExprPtr& arg : node.args) {
                    copy.args.push_back(std::make_unique<Expr>(clone_expr(*arg)));
                }
                return ExprNode{std::move(copy)};
            } else {
                static_assert(std::is_same_v<T, ParenExpr>);
                ParenExpr copy;
                copy.inner = std::make_unique<Expr>(clone_expr(*node.inner));
                return ExprNode{std::move(copy)};
            }
        },
        expr.node);
    return out;
}

std::string print_expr(const Expr& expr) {
    std::string out;
    print_expr_into(expr, out);
    return out;
}

std::string print_statement(const Stmt& stmt) {
    std::string out;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, FamilyDecl>) {
                out += "family " + node.name + " kind ";
                out += family_kind_name(node.kind);
                if (node.owner) out += " owner " + *node.owner;
            } else if constexpr (std::is_same_v<T, ScaleDecl>) {
                out += "scale " + node.name + " of " + node.family;
                if (node.offset) {
                    out += " offset " + format_double(*node.offset);
                    out += " factor " + format_double(*node.factor);
                }
            } else if constexpr (std::is_same_v<T, LetStmt>) {
                out += "let " + node.name + " = " + print_expr(node.expr);
            } else if constexpr (std::is_same_v<T, CheckStmt>) {
                out += "check " + print_expr(node.expr);
            } else {
                static_assert(std::is_same_v<T, AssertStmt>);
                out += "assert " + print_expr(node.lhs) + " " + cmp_op_symbol(node.op) + " " +
                       print_expr(node.rhs);
            }
        },
        stmt.node);
    return out;
}

std::string print_program(const Program& program) {
    std::string out;
    for (const Stmt& stmt : program.statements) {
        out += print_statement(stmt);
        out += '\n';
    }
    return out;
}

}  // namespace msr
