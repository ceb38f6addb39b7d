#include "msr/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>

namespace msr {

namespace {

enum class Tok {
    Ident,
    Number,
    KwFamily,
    KwScale,
    KwLet,
    KwCheck,
    KwAssert,
    KwMix,
    KwKind,
    KwOwner,
    KwOf,
    KwOffset,
    KwFactor,
    KwAffine,
    KwLinear,
    KwAbsolute,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Semicolon,
    Assign,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    PointAt,  // "@"
    DiffAt,   // "d@"
    End,
    Bad,
};

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    double number = 0.0;
    Span span{};
};

Tok keyword_kind(std::string_view word) {
    if (word == "family") return Tok::KwFamily;
    if (word == "scale") return Tok::KwScale;
    if (word == "let") return Tok::KwLet;
    if (word == "check") return Tok::KwCheck;
    if (word == "assert") return Tok::KwAssert;
    if (word == "mix") return Tok::KwMix;
    if (word == "kind") return Tok::KwKind;
    if (word == "owner") return Tok::KwOwner;
    if (word == "of") return Tok::KwOf;
    if (word == "offset") return Tok::KwOffset;
    if (word == "factor") return Tok::KwFactor;
    if (word == "affine") return Tok::KwAffine;
    if (word == "linear") return Tok::KwLinear;
    if (word == "absolute") return Tok::KwAbsolute;
    return Tok::Ident;
}

bool starts_statement(Tok kind) {
    switch (kind) {
        case Tok::KwFamily:
        case Tok::KwScale:
        case Tok::KwLet:
        case Tok::KwCheck:
        case Tok::KwAssert: return true;
        default: return false;
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> tokens;
        while (true) {
            skip_trivia();
            Token tok = next(diags);
            tokens.push_back(tok);
            if (tok.kind == Tok::End) break;
        }
        return tokens;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 0;

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (pos_ >= src_.size()) return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 0;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Span span_from(int line, int col, std::size_t start) const {
        return Span{line, col, static_cast<int>(pos_ - start), start};
    }

    Token next(std::vector<Diagnostic>& diags) {
        int line = line_;
        int col = col_;
        std::size_t start = pos_;
        auto make = [&](Tok kind) {
            Token t;
            t.kind = kind;
            t.text = src_.substr(start, pos_ - start);
            t.span = span_from(line, col, start);
            return t;
        };

        if (pos_ >= src_.size()) {
            Token t = make(Tok::End);
            t.span.len = 1;
            return t;
        }

        char c = peek();

        // "d@" introduces a difference reading; only special at token start.
        if (c == 'd' && peek(1) == '@') {
            advance();
            advance();
            return make(Tok::DiffAt);
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            Token t = make(Tok::Ident);
            t.kind = keyword_kind(t.text);
            return t;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
            if (peek() == 'e' || peek() == 'E') {
                std::size_t mark = pos_;
                int mark_col = col_;
                advance();
                if (peek() == '+' || peek() == '-') advance();
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
                } else {
                    pos_ = mark;  // not an exponent after all
                    col_ = mark_col;
                }
            }
            Token t = make(Tok::Number);
            t.number = std::strtod(std::string(t.text).c_str(), nullptr);
            return t;
        }

        advance();
        switch (c) {
            case '+': return make(Tok::Plus);
            case '-': return make(Tok::Minus);
            case '*': return make(Tok::Star);
            case '/': return make(Tok::Slash);
            case '^': return make(Tok::Caret);
            case '(': return make(Tok::LParen);
            case ')': return make(Tok::RParen);
            case ',': return make(Tok::Comma);
            case ':': return make(Tok::Colon);
            case ';': return make(Tok::Semicolon);
            case '@': return make(Tok::PointAt);
            case '=':
                if (peek() == '=') {
                    advance();
                    return make(Tok::EqEq);
                }
                return make(Tok::Assign);
            case '!':
                if (peek() == '=') {
                    advance();
                    return make(Tok::NotEq);
                }
                break;
            case '<':
                if (peek() == '=') {
                    advance();
                    return make(Tok::Le);
                }
                return make(Tok::Lt);
            case '>':
                if (peek() == '=') {
                    advance();
                    return make(Tok::Ge);
                }
                return make(Tok::Gt);
            default: break;
        }
        Token t = make(Tok::Bad);
        diags.push_back(Diagnostic{ErrorCode::Syntax,
                                   "unexpected character '" + std::string(t.text) + "'", t.span,
                                   Severity::Error});
        return t;
    }
};

struct ParseError {};  // unwinds to the statement loop for recovery

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : tokens_(std::move(tokens)), diags_(diags) {}

    Program run() {
        Program program;
        while (!at(Tok::End)) {
            if (at(Tok::Semicolon) || at(Tok::Bad)) {
                bump();  // bad characters were already reported by the lexer
                continue;
            }
            std::size_t before = pos_;
            try {
                program.statements.push_back(parse_statement());
            } catch (const ParseError&) {
                recover();
            }
            if (pos_ == before) bump();  // always make progress
        }
        return program;
    }

private:
    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;

    const Token& cur() const { return tokens_[pos_]; }
    const Token& prev() const { return tokens_[pos_ > 0 ? pos_ - 1 : 0]; }
    bool at(Tok kind) const { return cur().kind == kind; }
    const Token& bump() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& tok, const std::string& message) {
        // Anchor errors at a statement boundary on the last real token, so
        // a dangling operator points at itself rather than past the line.
        const Token* anchor = &tok;
        if ((tok.kind == Tok::End || tok.kind == Tok::Semicolon || starts_statement(tok.kind)) &&
            pos_ > 0) {
            anchor = &prev();
        }
        diags_.push_back(
            Diagnostic{ErrorCode::Syntax, message, anchor->span, Severity::Error});
        throw ParseError{};
    }

    const Token& expect(Tok kind, const char* what) {
        if (!at(kind)) fail(cur(), std::string("expected ") + what);
        return bump();
    }

    void recover() {
        while (!at(Tok::End) && !at(Tok::Semicolon) && !starts_statement(cur().kind)) bump();
        if (at(Tok::Semicolon)) bump();
    }

    std::string expect_ident(const char* what) {
        if (!at(Tok::Ident)) fail(cur(), std::string("expected ") + what);
        return std::string(bump().text);
    }

    Span span_between(const Span& first, const Span& last) const {
        Span s = first;
        s.len = static_cast<int>(last.offset + last.len - first.offset);
        return s;
    }

    Stmt parse_statement() {
        const Token& head = cur();
        switch (head.kind) {
            case Tok::KwFamily: return parse_family_decl();
            case Tok::KwScale: return parse_scale_decl();
            case Tok::KwLet: return parse_let();
            case Tok::KwCheck: return parse_check();
            case Tok::KwAssert: return parse_assert();
            default:
                fail(head, "expected a statement (family, scale, let, check, or assert)");
        }
    }

    Stmt parse_family_decl() {
        Span start = bump().span;  // family
        FamilyDecl decl;
        decl.name = expect_ident("a family name");
        expect(Tok::KwKind, "'kind'");
        Span end = cur().span;
        switch (cur().kind) {
            case Tok::KwAffine: decl.kind = FamilyKind::Affine; break;
            case Tok::KwLinear: decl.kind = FamilyKind::Linear; break;
            case Tok::KwAbsolute: decl.kind = FamilyKind::Absolute; break;
            default: fail(cur(), "expected a family kind (affine, linear, or absolute)");
        }
        bump();
        if (at(Tok::KwOwner)) {
            bump();
            if (!at(Tok::Ident)) fail(cur(), "expected an owner name");
            end = cur().span;
            decl.owner = std::string(bump().text);
        }
        return Stmt{std::move(decl), span_between(start, end)};
    }

    double parse_snum() {
        bool negative = false;
        if (at(Tok::Minus)) {
            bump();
            negative = true;
        }
        if (!at(Tok::Number)) fail(cur(), "expected a number");
        double value = bump().number;
        if (at(Tok::Slash)) {
            bump();
            if (!at(Tok::Number)) fail(cur(), "expected a denominator");
            const Token& denom = bump();
            if (denom.number == 0.0) {
                diags_.push_back(Diagnostic{ErrorCode::Syntax, "denominator of a rational is zero",
                                            denom.span, Severity::Error});
                throw ParseError{};
            }
            value /= denom.number;
        }
        return negative ? -value : value;
    }

    Stmt parse_scale_decl() {
        Span start = bump().span;  // scale
        ScaleDecl decl;
        decl.name = expect_ident("a scale name");
        expect(Tok::KwOf, "'of'");
        Span end = cur().span;
        decl.family = expect_ident("a family name");
        if (at(Tok::KwOffset)) {
            bump();
            decl.offset = parse_snum();
            expect(Tok::KwFactor, "'factor'");
            decl.factor = parse_snum();
            end = prev().span;
        }
        return Stmt{std::move(decl), span_between(start, end)};
    }

    Stmt parse_let() {
        Span start = bump().span;  // let
        LetStmt stmt;
        if (!at(Tok::Ident)) fail(cur(), "expected a name to bind");
        stmt.name_span = cur().span;
        stmt.name = std::string(bump().text);
        expect(Tok::Assign, "'='");
        stmt.expr = parse_expr();
        Span end = stmt.expr.span;
        return Stmt{std::move(stmt), span_between(start, end)};
    }

    Stmt parse_check() {
        Span start = bump().span;  // check
        CheckStmt stmt;
        stmt.expr = parse_expr();
        Span end = stmt.expr.span;
        return Stmt{std::move(stmt), span_between(start, end)};
    }

    Stmt parse_assert() {
        Span start = bump().span;  // assert
        AssertStmt stmt;
        stmt.lhs = parse_expr();
        switch (cur().kind) {
            case Tok::EqEq: stmt.op = CmpOp::Eq; break;
            case Tok::NotEq: stmt.op = CmpOp::Ne; break;
            case Tok::Lt: stmt.op = CmpOp::Lt; break;
            case Tok::Le: stmt.op = CmpOp::Le; break;
            case Tok::Gt: stmt.op = CmpOp::Gt; break;
            case Tok::Ge: stmt.op = CmpOp::Ge; break;
            default: fail(cur(), "expected a comparison operator");
        }
        stmt.op_span = bump().span;
        stmt.rhs = parse_expr();
        Span end = stmt.rhs.span;
        return Stmt{std::move(stmt), span_between(start, end)};
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            Span op_span = bump().span;
            Expr rhs = parse_term();
            Span span = span_between(lhs.span, rhs.span);
            BinaryExpr node{op, std::make_unique<Expr>(std::move(lhs)),
                            std::make_unique<Expr>(std::move(rhs)), op_span};
            lhs = Expr{std::move(node), span};
        }
        return lhs;
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (at(Tok::Star) || at(Tok::Slash)) {
            BinOp op = at(Tok::Star) ? BinOp::Mul : BinOp::Div;
            Span op_span = bump().span;
            Expr rhs = parse_factor();
            Span span = span_between(lhs.span, rhs.span);
            BinaryExpr node{op, std::make_unique<Expr>(std::move(lhs)),
                            std::make_unique<Expr>(std::move(rhs)), op_span};
            lhs = Expr{std::move(node), span};
        }
        return lhs;
    }

    Expr parse_factor() {
        std::optional<Span> minus;
        if (at(Tok::Minus)) minus = bump().span;

        Expr base = parse_base();

        if (at(Tok::Caret)) {
            Span caret = bump().span;
            bool neg_exp = false;
            if (at(Tok::Minus)) {
                bump();
                neg_exp = true;
            }
            if (!at(Tok::Number)) fail(cur(), "expected an integer exponent");
            const Token& num = cur();
            for (char c : num.text) {
                if (!std::isdigit(static_cast<unsigned char>(c))) {
                    fail(num, "exponent must be a literal integer");
                }
            }
            long exp = std::strtol(std::string(num.text).c_str(), nullptr, 10);
            bump();
            Span span = span_between(base.span, prev().span);
            PowExpr node{std::make_unique<Expr>(std::move(base)),
                         static_cast<int>(neg_exp ? -exp : exp), caret};
            base = Expr{std::move(node), span};
        }

        if (minus) {
            Span span = span_between(*minus, base.span);
            NegateExpr node{std::make_unique<Expr>(std::move(base))};
            base = Expr{std::move(node), span};
        }
        return base;
    }

    Expr parse_base() {
        const Token& tok = cur();
        switch (tok.kind) {
            case Tok::Number: {
                Span start = bump().span;
                NumberLit lit;
                lit.value = prev().number;
                Span end = start;
                if (at(Tok::PointAt) || at(Tok::DiffAt)) {
                    lit.unit = at(Tok::PointAt) ? LiteralUnit::Point : LiteralUnit::Difference;
                    bump();
                    end = cur().span;
                    lit.scale = expect_ident("a scale name after the unit tag");
                }
                return Expr{std::move(lit), span_between(start, end)};
            }
            case Tok::Ident: {
                Span span = bump().span;
                return Expr{NameRef{std::string(prev().text)}, span};
            }
            case Tok::LParen: {
                Span start = bump().span;
                Expr inner = parse_expr();
                Span end = expect(Tok::RParen, "')'").span;
                ParenExpr node{std::make_unique<Expr>(std::move(inner))};
                return Expr{std::move(node), span_between(start, end)};
            }
            case Tok::KwMix: {
                Span start = bump().span;
                expect(Tok::LParen, "'(' after mix");
                MixExpr node;
                while (true) {
                    node.weights.push_back(parse_snum());
                    expect(Tok::Colon, "':' between weight and point");
                    node.args.push_back(std::make_unique<Expr>(parse_expr()));
                    if (at(Tok::Comma)) {
                        bump();
                        continue;
                    }
                    break;
                }
                Span end = expect(Tok::RParen, "')'").span;
                return Expr{std::move(node), span_between(start, end)};
            }
            default: fail(tok, "expected an expression");
        }
    }
};

}  // namespace

ParseResult parse_program(std::string_view source) {
    ParseResult result;
    Lexer lexer(source);
    std::vector<Token> tokens = lexer.run(result.diagnostics);
    Parser parser(std::move(tokens), result.diagnostics);
    result.program = parser.run();
    return result;
}

}  // namespace msr
