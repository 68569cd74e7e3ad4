#include "pparab/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace pparab {

struct Expression::Node {
    enum class Kind { number, var_x, var_t, neg, add, sub, mul, div, pow, fn_abs, fn_log, fn_exp, fn_sqrt };
    Kind kind = Kind::number;
    double number = 0.0;
    int index = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr leaf_number(double v)
{
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::number;
    node->number = v;
    return node;
}

NodePtr make(Node::Kind kind, NodePtr lhs, NodePtr rhs = nullptr)
{
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

class Parser {
public:
    Parser(std::string_view text, int n) : text_(text), n_(n) {}

    NodePtr parse()
    {
        NodePtr root = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return root;
    }

private:
    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError("expression: " + msg + " at position " + std::to_string(pos_), pos_);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(Node::Kind::add, lhs, term());
            } else if (accept('-')) {
                lhs = make(Node::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Node::Kind::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make(Node::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary()
    {
        if (accept('-')) {
            return make(Node::Kind::neg, unary());
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^')) {
            return make(Node::Kind::pow, base, unary());
        }
        return base;
    }

    NodePtr primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (accept('(')) {
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "t") {
                return make(Node::Kind::var_t, nullptr);
            }
            if (word.size() > 1 && word[0] == 'x') {
                int index = 0;
                for (std::size_t i = 1; i < word.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(word[i]))) {
                        pos_ = start;
                        fail("unknown identifier '" + std::string(word) + "'");
                    }
                    index = index * 10 + (word[i] - '0');
                }
                if (index < 1 || index > n_) {
                    pos_ = start;
                    fail("variable '" + std::string(word) + "' outside x1..x" + std::to_string(n_));
                }
                auto node = std::make_shared<Node>();
                node->kind = Node::Kind::var_x;
                node->index = index - 1;
                return node;
            }
            Node::Kind fn;
            if (word == "abs") {
                fn = Node::Kind::fn_abs;
            } else if (word == "log") {
                fn = Node::Kind::fn_log;
            } else if (word == "exp") {
                fn = Node::Kind::fn_exp;
            } else if (word == "sqrt") {
                fn = Node::Kind::fn_sqrt;
            } else {
                pos_ = start;
                fail("unknown identifier '" + std::string(word) + "'");
            }
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make(fn, arg);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const std::string rest(text_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) {
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return leaf_number(v);
    }
};

double eval(const Node& node, const Point& p)
{
    using K = Node::Kind;
    switch (node.kind) {
    case K::number: return node.number;
    case K::var_x: return p.x(node.index);
    case K::var_t: return p.t;
    case K::neg: return -eval(*node.lhs, p);
    case K::add: return eval(*node.lhs, p) + eval(*node.rhs, p);
    case K::sub: return eval(*node.lhs, p) - eval(*node.rhs, p);
    case K::mul: return eval(*node.lhs, p) * eval(*node.rhs, p);
    case K::div: return eval(*node.lhs, p) / eval(*node.rhs, p);
    case K::pow: return std::pow(eval(*node.lhs, p), eval(*node.rhs, p));
    case K::fn_abs: return std::abs(eval(*node.lhs, p));
    case K::fn_log: return std::log(eval(*node.lhs, p));
    case K::fn_exp: return std::exp(eval(*node.lhs, p));
    case K::fn_sqrt: return std::sqrt(eval(*node.lhs, p));
    }
    return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text, int n)
{
    Expression e;
    e.root_ = Parser(text, n).parse();
    e.source_ = std::string(text);
    return e;
}

double Expression::operator()(const Point& p) const
{
    return eval(*root_, p);
}

}  // namespace pparab
