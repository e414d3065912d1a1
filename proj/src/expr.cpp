#include "proxima/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>

#include "proxima/error.hpp"

namespace proxima::expr {

struct Expression::Data {
    std::string source;
    std::vector<Node> nodes;
    int root = -1;
};

namespace {

enum class TokenKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    TokenKind kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

std::string describe(const Token& token) {
    if (token.kind == TokenKind::end) return "end of input";
    return "'" + std::string(token.text) + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {TokenKind::end, start, {}};

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            return {TokenKind::ident, start, src_.substr(start, pos_ - start)};
        }

        ++pos_;
        const auto one = src_.substr(start, 1);
        switch (c) {
            case '+': return {TokenKind::plus, start, one};
            case '-': return {TokenKind::minus, start, one};
            case '*': return {TokenKind::star, start, one};
            case '/': return {TokenKind::slash, start, one};
            case '^': return {TokenKind::caret, start, one};
            case '(': return {TokenKind::lparen, start, one};
            case ')': return {TokenKind::rparen, start, one};
            case ',': return {TokenKind::comma, start, one};
            default: throw ParseError("unexpected character '" + std::string(one) + "'", start);
        }
    }

private:
    Token lex_number(std::size_t start) {
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;  // "2e" : leave 'e' for the next token
        }
        const auto text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
            throw ParseError("number out of range '" + std::string(text) + "'", start);
        return {TokenKind::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view src, std::vector<Node>& nodes) : lexer_(src), nodes_(nodes) {
        advance();
    }

    int parse_all() {
        const int root = parse_expr();
        if (current_.kind != TokenKind::end)
            throw ParseError("unexpected " + describe(current_), current_.offset);
        return root;
    }

private:
    void advance() { current_ = lexer_.next(); }

    void expect(TokenKind kind, const char* what) {
        if (current_.kind != kind)
            throw ParseError(std::string("expected ") + what + ", found " + describe(current_),
                             current_.offset);
        advance();
    }

    int add(Node node) {
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size()) - 1;
    }

    int binary(NodeKind kind, int lhs, int rhs) { return add({kind, 0.0, {}, lhs, rhs}); }

    int parse_expr() {
        int lhs = parse_term();
        while (current_.kind == TokenKind::plus || current_.kind == TokenKind::minus) {
            const auto kind = current_.kind == TokenKind::plus ? NodeKind::add : NodeKind::subtract;
            advance();
            lhs = binary(kind, lhs, parse_term());
        }
        return lhs;
    }

    int parse_term() {
        int lhs = parse_power();
        while (current_.kind == TokenKind::star || current_.kind == TokenKind::slash) {
            const auto kind = current_.kind == TokenKind::star ? NodeKind::multiply : NodeKind::divide;
            advance();
            lhs = binary(kind, lhs, parse_power());
        }
        return lhs;
    }

    int parse_power() {
        const int base = parse_unary();
        if (current_.kind != TokenKind::caret) return base;
        advance();
        return binary(NodeKind::power, base, parse_power());
    }

    int parse_unary() {
        if (current_.kind == TokenKind::minus) {
            advance();
            return add({NodeKind::negate, 0.0, {}, parse_unary(), -1});
        }
        return parse_primary();
    }

    int parse_primary() {
        const Token token = current_;
        switch (token.kind) {
            case TokenKind::number:
                advance();
                return add({NodeKind::literal, token.number, {}, -1, -1});
            case TokenKind::lparen: {
                advance();
                const int inner = parse_expr();
                expect(TokenKind::rparen, "')'");
                return inner;
            }
            case TokenKind::ident:
                advance();
                if (current_.kind == TokenKind::lparen) return parse_call(token);
                return add({NodeKind::variable, 0.0, std::string(token.text), -1, -1});
            default:
                throw ParseError("unexpected " + describe(token), token.offset);
        }
    }

    int parse_call(const Token& name) {
        NodeKind kind;
        std::size_t arity;
        if (name.text == "abs") {
            kind = NodeKind::abs;
            arity = 1;
        } else if (name.text == "min") {
            kind = NodeKind::min;
            arity = 2;
        } else if (name.text == "max") {
            kind = NodeKind::max;
            arity = 2;
        } else {
            throw ParseError("unknown function '" + std::string(name.text) + "'", name.offset);
        }

        advance();  // '('
        std::vector<int> args;
        if (current_.kind != TokenKind::rparen) {
            args.push_back(parse_expr());
            while (current_.kind == TokenKind::comma) {
                advance();
                args.push_back(parse_expr());
            }
        }
        expect(TokenKind::rparen, "')'");
        if (args.size() != arity)
            throw ParseError(std::string(name.text) + " expects " + std::to_string(arity) +
                                 " argument(s), got " + std::to_string(args.size()),
                             name.offset);
        return add({kind, 0.0, {}, args[0], arity == 2 ? args[1] : -1});
    }

    Lexer lexer_;
    std::vector<Node>& nodes_;
    Token current_{TokenKind::end, 0, {}};
};

const char* operator_text(NodeKind kind) {
    switch (kind) {
        case NodeKind::add: return " + ";
        case NodeKind::subtract: return " - ";
        case NodeKind::multiply: return " * ";
        case NodeKind::divide: return " / ";
        case NodeKind::power: return " ^ ";
        default: return "";
    }
}

double checked(double value, const char* what) {
    if (!std::isfinite(value)) throw EvalError(std::string("non-finite result in ") + what);
    return value;
}

template <typename Leaf>
double eval_tree(std::span<const Node> nodes, int index, const Leaf& leaf) {
    const Node& n = nodes[static_cast<std::size_t>(index)];
    auto sub = [&](int child) { return eval_tree(nodes, child, leaf); };
    switch (n.kind) {
        case NodeKind::literal: return n.value;
        case NodeKind::variable: return leaf(index);
        case NodeKind::negate: return -sub(n.lhs);
        case NodeKind::abs: return std::fabs(sub(n.lhs));
        case NodeKind::add: return checked(sub(n.lhs) + sub(n.rhs), "addition");
        case NodeKind::subtract: return checked(sub(n.lhs) - sub(n.rhs), "subtraction");
        case NodeKind::multiply: return checked(sub(n.lhs) * sub(n.rhs), "multiplication");
        case NodeKind::divide: {
            const double num = sub(n.lhs);
            const double den = sub(n.rhs);
            if (den == 0.0) throw EvalError("division by zero");
            return checked(num / den, "division");
        }
        case NodeKind::power: {
            const double base = sub(n.lhs);
            const double exponent = sub(n.rhs);
            if (base == 0.0 && exponent < 0.0) throw EvalError("zero raised to a negative power");
            return checked(std::pow(base, exponent), "power");
        }
        case NodeKind::min: return std::fmin(sub(n.lhs), sub(n.rhs));
        case NodeKind::max: return std::fmax(sub(n.lhs), sub(n.rhs));
    }
    throw EvalError("corrupt expression node");
}

}  // namespace

Expression Expression::parse(std::string_view source) {
    auto data = std::make_shared<Data>();
    data->source = std::string(source);
    bool blank = true;
    for (char c : source) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (blank) throw ParseError("empty expression", 0);
    Parser parser(data->source, data->nodes);
    data->root = parser.parse_all();
    return Expression(std::move(data));
}

const std::string& Expression::source() const { return data_->source; }

std::span<const Node> Expression::nodes() const { return data_->nodes; }

int Expression::root() const { return data_->root; }

std::set<std::string> Expression::free_variables() const {
    std::set<std::string> names;
    for (const auto& node : data_->nodes)
        if (node.kind == NodeKind::variable) names.insert(node.name);
    return names;
}

std::string Expression::to_string() const {
    const auto& nodes = data_->nodes;
    std::function<std::string(int)> print = [&](int index) -> std::string {
        const Node& n = nodes[static_cast<std::size_t>(index)];
        switch (n.kind) {
            case NodeKind::literal: return format_real(n.value);
            case NodeKind::variable: return n.name;
            case NodeKind::negate: return "(-" + print(n.lhs) + ")";
            case NodeKind::abs: return "abs(" + print(n.lhs) + ")";
            case NodeKind::min: return "min(" + print(n.lhs) + ", " + print(n.rhs) + ")";
            case NodeKind::max: return "max(" + print(n.lhs) + ", " + print(n.rhs) + ")";
            default: return "(" + print(n.lhs) + operator_text(n.kind) + print(n.rhs) + ")";
        }
    };
    return print(data_->root);
}

bool Expression::structurally_equal(const Expression& other) const {
    const auto& a = data_->nodes;
    const auto& b = other.data_->nodes;
    std::function<bool(int, int)> same = [&](int i, int j) {
        if (i < 0 || j < 0) return i == j;
        const Node& x = a[static_cast<std::size_t>(i)];
        const Node& y = b[static_cast<std::size_t>(j)];
        if (x.kind != y.kind) return false;
        if (x.kind == NodeKind::literal) return x.value == y.value;
        if (x.kind == NodeKind::variable) return x.name == y.name;
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
    };
    return same(data_->root, other.data_->root);
}

double evaluate(const Expression& expression, const std::map<std::string, double>& bindings) {
    const auto nodes = expression.nodes();
    return eval_tree(nodes, expression.root(), [&](int index) {
        const auto& name = nodes[static_cast<std::size_t>(index)].name;
        const auto it = bindings.find(name);
        if (it == bindings.end()) throw EvalError("unbound variable '" + name + "'");
        return it->second;
    });
}

BoundExpression::BoundExpression(Expression expression, std::span<const std::string> slot_names)
    : expression_(std::move(expression)) {
    const auto nodes = expression_.nodes();
    slot_of_node_.assign(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind != NodeKind::variable) continue;
        for (std::size_t s = 0; s < slot_names.size(); ++s) {
            if (slot_names[s] == nodes[i].name) {
                slot_of_node_[i] = static_cast<int>(s);
                break;
            }
        }
        if (slot_of_node_[i] < 0)
            throw BindError("unbound variable '" + nodes[i].name + "' in expression '" +
                            expression_.source() + "'");
    }
}

double BoundExpression::operator()(std::span<const double> slots) const {
    return eval_tree(expression_.nodes(), expression_.root(), [&](int index) {
        return slots[static_cast<std::size_t>(slot_of_node_[static_cast<std::size_t>(index)])];
    });
}

std::string format_real(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc()) return "nan";
    return std::string(buffer, ptr);
}

}  // namespace proxima::expr
