#pragma once

// Warping expressions in x, e.g. "(1+0.2*x)^2" or "exp(0.3*sin(x))".
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sqrt | sin | cos

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/chebyshev.hpp"
#include "steklov/errors.hpp"
#include "steklov/warping.hpp"

namespace steklov {

class Expression {
public:
    double operator()(double x) const { return root_->eval(x); }

    friend Expression compile_expression(std::string_view text);

private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(double x) const = 0;
    };
    using NodePtr = std::unique_ptr<Node>;

    struct Constant : Node {
        double v;
        explicit Constant(double v) : v(v) {}
        double eval(double) const override { return v; }
    };
    struct Variable : Node {
        double eval(double x) const override { return x; }
    };
    struct Negate : Node {
        NodePtr arg;
        explicit Negate(NodePtr a) : arg(std::move(a)) {}
        double eval(double x) const override { return -arg->eval(x); }
    };
    struct Binary : Node {
        char op;
        NodePtr lhs, rhs;
        Binary(char op, NodePtr l, NodePtr r) : op(op), lhs(std::move(l)), rhs(std::move(r)) {}
        double eval(double x) const override {
            const double a = lhs->eval(x);
            const double b = rhs->eval(x);
            switch (op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/':
                if (b == 0.0) throw EvaluationError("division by zero at x=" + std::to_string(x));
                return a / b;
            default: {
                const double r = std::pow(a, b);
                if (!std::isfinite(r)) {
                    throw EvaluationError("invalid power at x=" + std::to_string(x));
                }
                return r;
            }
            }
        }
    };
    struct Call : Node {
        std::string name;
        NodePtr arg;
        Call(std::string n, NodePtr a) : name(std::move(n)), arg(std::move(a)) {}
        double eval(double x) const override {
            const double a = arg->eval(x);
            if (name == "exp") return std::exp(a);
            if (name == "sin") return std::sin(a);
            if (name == "cos") return std::cos(a);
            if (name == "log") {
                if (!(a > 0.0)) throw EvaluationError("log of non-positive value at x=" + std::to_string(x));
                return std::log(a);
            }
            if (!(a >= 0.0)) throw EvaluationError("sqrt of negative value at x=" + std::to_string(x));
            return std::sqrt(a);
        }
    };

    class Parser {
    public:
        explicit Parser(std::string_view text) : text_(text) {}

        NodePtr parse() {
            auto node = expr();
            skip();
            if (pos_ != text_.size()) throw SyntaxError(pos_, "operator or end of input");
            return node;
        }

    private:
        void skip() {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        bool accept(char c) {
            skip();
            if (pos_ < text_.size() && text_[pos_] == c) {
                ++pos_;
                return true;
            }
            return false;
        }

        NodePtr expr() {
            auto node = term();
            for (;;) {
                if (accept('+')) {
                    node = std::make_unique<Binary>('+', std::move(node), term());
                } else if (accept('-')) {
                    node = std::make_unique<Binary>('-', std::move(node), term());
                } else {
                    return node;
                }
            }
        }
        NodePtr term() {
            auto node = unary();
            for (;;) {
                if (accept('*')) {
                    node = std::make_unique<Binary>('*', std::move(node), unary());
                } else if (accept('/')) {
                    node = std::make_unique<Binary>('/', std::move(node), unary());
                } else {
                    return node;
                }
            }
        }
        NodePtr unary() {
            if (accept('-')) return std::make_unique<Negate>(unary());
            if (accept('+')) return unary();
            return power();
        }
        NodePtr power() {
            auto base = primary();
            if (accept('^')) return std::make_unique<Binary>('^', std::move(base), unary());
            return base;
        }
        NodePtr primary() {
            skip();
            if (pos_ >= text_.size()) throw SyntaxError(pos_, "number, 'x', function or '('");
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
            if (accept('(')) {
                auto inner = expr();
                if (!accept(')')) throw SyntaxError(pos_, "')'");
                return inner;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                const std::size_t start = pos_;
                while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                const std::string name(text_.substr(start, pos_ - start));
                if (name == "x") return std::make_unique<Variable>();
                if (name == "exp" || name == "log" || name == "sqrt" || name == "sin" || name == "cos") {
                    if (!accept('(')) throw SyntaxError(pos_, "'(' after " + name);
                    auto arg = expr();
                    if (!accept(')')) throw SyntaxError(pos_, "')'");
                    return std::make_unique<Call>(name, std::move(arg));
                }
                throw SyntaxError(start, "number, 'x', function or '('");
            }
            throw SyntaxError(pos_, "number, 'x', function or '('");
        }
        NodePtr number() {
            const std::string rest(text_.substr(pos_));
            char* end = nullptr;
            const double v = std::strtod(rest.c_str(), &end);
            if (end == rest.c_str()) throw SyntaxError(pos_, "number");
            pos_ += static_cast<std::size_t>(end - rest.c_str());
            return std::make_unique<Constant>(v);
        }

        std::string_view text_;
        std::size_t pos_ = 0;
    };

    explicit Expression(NodePtr root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

inline Expression compile_expression(std::string_view text) {
    return Expression(Expression::Parser(text).parse());
}

/// Chebyshev coefficients of the expression sampled on `node_count` Lobatto
/// nodes, with negligible trailing coefficients dropped.
inline std::vector<double> parse_expression(std::string_view text,
                                            std::size_t node_count = kDefaultNodeCount) {
    const auto expr = compile_expression(text);
    auto coeffs = cheb::fit(
        [&](double x) {
            const double v = expr(x);
            if (!std::isfinite(v)) throw EvaluationError("non-finite value at x=" + std::to_string(x));
            return v;
        },
        node_count);
    return cheb::chop(std::move(coeffs));
}

} // namespace steklov
