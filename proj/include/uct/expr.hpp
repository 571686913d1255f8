#pragma once

// Expression trees for f : [0,1] -> R and a recursive-descent parser.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := NUMBER | "x" | "(" expr ")" | "-" factor | FUNC "(" expr ("," expr)? ")"
//   FUNC   := abs | min | max | sin | cos | exp
//   NUMBER := decimal literal | p/q

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "uct/dyadic.hpp"
#include "uct/errors.hpp"

namespace uct {

enum class Op { Var, Const, Neg, Abs, Add, Sub, Mul, Div, Min, Max, Sin, Cos, Exp };

struct ExprNode {
    Op op = Op::Var;
    BigInt num = 0;  // Const: num / den, den > 0
    BigInt den = 1;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

/// Immutable expression handle; copies share structure.
class Expr {
public:
    Expr() : Expr(make(Op::Var)) {}

    static Expr variable() { return Expr(make(Op::Var)); }
    static Expr constant(BigInt num, BigInt den = 1) {
        if (den == 0) {
            throw InvalidNumber("zero denominator in constant");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        BigInt g = boost::multiprecision::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        auto n = std::make_shared<ExprNode>();
        n->op = Op::Const;
        n->num = std::move(num);
        n->den = std::move(den);
        return Expr(std::move(n));
    }
    static Expr constant(const Dyadic& d) { return constant(d.mantissa(), BigInt(1) << d.exponent()); }
    static Expr unary(Op op, const Expr& a) {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        n->lhs = a.root_;
        return Expr(std::move(n));
    }
    static Expr binary(Op op, const Expr& a, const Expr& b) {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        n->lhs = a.root_;
        n->rhs = b.root_;
        return Expr(std::move(n));
    }

    const ExprNode& root() const { return *root_; }
    Op op() const { return root_->op; }
    Expr lhs() const { return Expr(root_->lhs); }
    Expr rhs() const { return Expr(root_->rhs); }

    bool uses_transcendentals() const { return uses_transcendentals(*root_); }

    /// Fully parenthesized rendering that parses back to the same function.
    std::string to_string() const { return render(*root_); }

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : root_(std::move(n)) {}

    static std::shared_ptr<const ExprNode> make(Op op) {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        return n;
    }

    static bool uses_transcendentals(const ExprNode& n) {
        if (n.op == Op::Sin || n.op == Op::Cos || n.op == Op::Exp) {
            return true;
        }
        return (n.lhs && uses_transcendentals(*n.lhs)) || (n.rhs && uses_transcendentals(*n.rhs));
    }

    static std::string render(const ExprNode& n) {
        switch (n.op) {
            case Op::Var: return "x";
            case Op::Const: {
                std::string s = n.num.str();
                if (n.den != 1) {
                    s += "/" + n.den.str();
                }
                return n.num < 0 || n.den != 1 ? "(" + s + ")" : s;
            }
            case Op::Neg: return "(-" + render(*n.lhs) + ")";
            case Op::Abs: return "abs(" + render(*n.lhs) + ")";
            case Op::Sin: return "sin(" + render(*n.lhs) + ")";
            case Op::Cos: return "cos(" + render(*n.lhs) + ")";
            case Op::Exp: return "exp(" + render(*n.lhs) + ")";
            case Op::Min: return "min(" + render(*n.lhs) + ", " + render(*n.rhs) + ")";
            case Op::Max: return "max(" + render(*n.lhs) + ", " + render(*n.rhs) + ")";
            case Op::Add: return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
            case Op::Sub: return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
            case Op::Mul: return "(" + render(*n.lhs) + " * " + render(*n.rhs) + ")";
            case Op::Div: return "(" + render(*n.lhs) + " / " + render(*n.rhs) + ")";
        }
        return "?";
    }

    std::shared_ptr<const ExprNode> root_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size()) {
            throw SyntaxError(pos_, "operator or end of input", describe_here());
        }
        return e;
    }

private:
    Expr expr() {
        Expr lhs = term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                lhs = Expr::binary(Op::Add, lhs, term());
            } else if (accept('-')) {
                lhs = Expr::binary(Op::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            skip_space();
            if (accept('*')) {
                lhs = Expr::binary(Op::Mul, lhs, factor());
            } else if (accept('/')) {
                lhs = Expr::binary(Op::Div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    Expr factor() {
        skip_space();
        if (pos_ >= text_.size()) {
            throw SyntaxError(pos_, "number, 'x', '(', '-' or function", "end of input");
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (accept('(')) {
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (accept('-')) {
            return Expr::unary(Op::Neg, factor());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (name == "x") {
                return Expr::variable();
            }
            return call(name, start);
        }
        throw SyntaxError(pos_, "number, 'x', '(', '-' or function", describe_here());
    }

    Expr call(const std::string& name, std::size_t at) {
        int arity;
        Op op;
        if (name == "abs") {
            op = Op::Abs, arity = 1;
        } else if (name == "sin") {
            op = Op::Sin, arity = 1;
        } else if (name == "cos") {
            op = Op::Cos, arity = 1;
        } else if (name == "exp") {
            op = Op::Exp, arity = 1;
        } else if (name == "min") {
            op = Op::Min, arity = 2;
        } else if (name == "max") {
            op = Op::Max, arity = 2;
        } else {
            throw UnknownFunction(at, name);
        }
        skip_space();
        expect('(');
        Expr a = expr();
        if (arity == 1) {
            expect(')');
            return Expr::unary(op, a);
        }
        skip_space();
        expect(',');
        Expr b = expr();
        expect(')');
        return Expr::binary(op, a, b);
    }

    // decimal literal, optionally followed directly by "/digits"
    Expr number() {
        std::size_t start = pos_;
        std::string digits;
        std::size_t frac_digits = 0;
        bool seen_dot = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits.push_back(c);
                if (seen_dot) {
                    ++frac_digits;
                }
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (digits.empty()) {
            throw SyntaxError(start, "digits", describe_here());
        }
        BigInt num = parse_unsigned(digits, digits);
        BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_digits));
        if (!seen_dot && pos_ + 1 < text_.size() && text_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            BigInt q = parse_unsigned(text_.substr(dstart, pos_ - dstart), text_);
            if (q == 0) {
                throw SyntaxError(dstart, "nonzero denominator", "0");
            }
            den = q;
        }
        return Expr::constant(std::move(num), std::move(den));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw SyntaxError(pos_, std::string("'") + c + "'", describe_here());
        }
    }

    std::string describe_here() const {
        if (pos_ >= text_.size()) {
            return "end of input";
        }
        return std::string("'") + text_[pos_] + "'";
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace uct
