#include "epidiff/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "epidiff/errors.hpp"

namespace epidiff {

struct Expression::Node {
    enum class Kind { number, var_x, var_y, var_t, neg, add, sub, mul, div, sin, cos, exp };
    Kind kind = Kind::number;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->value = value;
    return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | '+' unary | primary
// primary:= number | ident | ident '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all()
    {
        auto n = expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return n;
    }

    bool uses_t = false;
    bool uses_xy = false;

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("expression '" + std::string(text_) + "': " + what + " at offset " +
                          std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        auto n = term();
        for (;;) {
            if (accept('+')) {
                n = make(Node::Kind::add, n, term());
            } else if (accept('-')) {
                n = make(Node::Kind::sub, n, term());
            } else {
                return n;
            }
        }
    }

    NodePtr term()
    {
        auto n = unary();
        for (;;) {
            if (accept('*')) {
                n = make(Node::Kind::mul, n, unary());
            } else if (accept('/')) {
                n = make(Node::Kind::div, n, unary());
            } else {
                return n;
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
        return primary();
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = expr();
            if (!accept(')')) {
                fail("missing ')'");
            }
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return identifier();
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) {
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return make(Node::Kind::number, nullptr, nullptr, v);
    }

    NodePtr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") {
            uses_xy = true;
            return make(Node::Kind::var_x);
        }
        if (name == "y") {
            uses_xy = true;
            return make(Node::Kind::var_y);
        }
        if (name == "t") {
            uses_t = true;
            return make(Node::Kind::var_t);
        }
        if (name == "pi") {
            return make(Node::Kind::number, nullptr, nullptr, std::numbers::pi);
        }
        Node::Kind kind;
        if (name == "sin") {
            kind = Node::Kind::sin;
        } else if (name == "cos") {
            kind = Node::Kind::cos;
        } else if (name == "exp") {
            kind = Node::Kind::exp;
        } else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!accept('(')) {
            fail("expected '(' after " + std::string(name));
        }
        auto arg = expr();
        if (!accept(')')) {
            fail("missing ')'");
        }
        return make(kind, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, double x, double y, double t)
{
    switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::var_x: return x;
    case Node::Kind::var_y: return y;
    case Node::Kind::var_t: return t;
    case Node::Kind::neg: return -eval(*n.lhs, x, y, t);
    case Node::Kind::add: return eval(*n.lhs, x, y, t) + eval(*n.rhs, x, y, t);
    case Node::Kind::sub: return eval(*n.lhs, x, y, t) - eval(*n.rhs, x, y, t);
    case Node::Kind::mul: return eval(*n.lhs, x, y, t) * eval(*n.rhs, x, y, t);
    case Node::Kind::div: return eval(*n.lhs, x, y, t) / eval(*n.rhs, x, y, t);
    case Node::Kind::sin: return std::sin(eval(*n.lhs, x, y, t));
    case Node::Kind::cos: return std::cos(eval(*n.lhs, x, y, t));
    case Node::Kind::exp: return std::exp(eval(*n.lhs, x, y, t));
    }
    return 0.0;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

Expression Expression::parse(std::string_view text)
{
    text = trim(text);
    Parser parser(text);
    Expression e;
    e.root_ = parser.parse_all();
    e.source_ = std::string(text);
    e.uses_t_ = parser.uses_t;
    e.uses_xy_ = parser.uses_xy;
    return e;
}

double Expression::evaluate(double x, double y, double t) const
{
    return eval(*root_, x, y, t);
}

}  // namespace epidiff
