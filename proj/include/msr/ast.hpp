#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "msr/diagnostics.hpp"
#include "msr/ops.hpp"
#include "msr/registry.hpp"

namespace msr {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// "20", "20 @C" (point reading), "10 d@C" (difference reading)
enum class LiteralUnit { None, Point, Difference };

struct NumberLit {
    double value = 0.0;
    LiteralUnit unit = LiteralUnit::None;
    std::string scale;  // set iff unit != None
};

struct NameRef {
    std::string name;
};

struct BinaryExpr {
    BinOp op = BinOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
    Span op_span{};
};

struct NegateExpr {
    ExprPtr operand;
};

struct PowExpr {
    ExprPtr base;
    int exponent = 1;
    Span op_span{};
};

struct MixExpr {
    std::vector<double> weights;
    std::vector<ExprPtr> args;
};

struct ParenExpr {
    ExprPtr inner;
};

using ExprNode =
    std::variant<NumberLit, NameRef, BinaryExpr, NegateExpr, PowExpr, MixExpr, ParenExpr>;

struct Expr {
    ExprNode node;
    Span span{};
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
const char* cmp_op_symbol(CmpOp op);

struct FamilyDecl {
    std::string name;
    FamilyKind kind = FamilyKind::Affine;
    std::optional<std::string> owner;
};

struct ScaleDecl {
    std::string name;
    std::string family;
    // Both present or both absent; absent declares an alias of the
    // family reference scale.
    std::optional<double> offset;
    std::optional<double> factor;
};

struct LetStmt {
    std::string name;
    Expr expr;
    Span name_span{};
};

struct CheckStmt {
    Expr expr;
};

struct AssertStmt {
    Expr lhs;
    CmpOp op = CmpOp::Eq;
    Expr rhs;
    Span op_span{};
};

using StmtNode = std::variant<FamilyDecl, ScaleDecl, LetStmt, CheckStmt, AssertStmt>;

struct Stmt {
    StmtNode node;
    Span span{};
};

struct Program {
    std::vector<Stmt> statements;
};

// Structural equality, spans ignored.
bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const Program& a, const Program& b);

// Deep copy, spans included.
Expr clone_expr(const Expr& expr);

// Canonical source form; reparsing it yields a structurally identical AST.
std::string print_expr(const Expr& expr);
std::string print_statement(const Stmt& stmt);
std::string print_program(const Program& program);

}  // namespace msr
