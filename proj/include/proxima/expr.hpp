#pragma once

// Arithmetic expressions used to declare proximity functions and mappings in
// problem files. Grammar (whitespace is insignificant):
//
//   expr    := term   (('+' | '-') term)*
//   term    := power  (('*' | '/') power)*
//   power   := unary  ('^' power)?            right-associative
//   unary   := '-' unary | primary
//   primary := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//   number  := digits ['.' digits] [('e'|'E') ['+'|'-'] digits] | '.' digits ...
//
// Unary minus binds tighter than '^', so "-2^2" is 4. Functions: abs/1,
// min/2, max/2. There is no implicit multiplication.

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proxima::expr {

enum class NodeKind {
    literal,
    variable,
    negate,
    abs,
    add,
    subtract,
    multiply,
    divide,
    power,
    min,
    max,
};

struct Node {
    NodeKind kind = NodeKind::literal;
    double value = 0.0;  // literal only
    std::string name;    // variable only
    int lhs = -1;        // child indices into the node arena
    int rhs = -1;
};

/// Immutable parsed expression. Copies share the node arena.
class Expression {
public:
    /// Throws ParseError on malformed input, unknown functions or wrong arity.
    static Expression parse(std::string_view source);

    const std::string& source() const;
    std::span<const Node> nodes() const;
    int root() const;

    std::set<std::string> free_variables() const;

    /// Fully parenthesised canonical form; re-parses to a structurally equal tree.
    std::string to_string() const;

    bool structurally_equal(const Expression& other) const;

private:
    struct Data;
    explicit Expression(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

/// Evaluate with named bindings. Throws EvalError for unbound variables,
/// division by zero, 0 raised to a negative power, or non-finite results.
double evaluate(const Expression& expression, const std::map<std::string, double>& bindings);

/// Expression whose variables have been resolved to slot positions. Used on
/// hot paths where the same expression is evaluated many times.
class BoundExpression {
public:
    /// Throws BindError if the expression references a name not in `slot_names`.
    BoundExpression(Expression expression, std::span<const std::string> slot_names);

    double operator()(std::span<const double> slots) const;

    const Expression& expression() const { return expression_; }

private:
    Expression expression_;
    std::vector<int> slot_of_node_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_real(double value);

}  // namespace proxima::expr
