#pragma once

#include "pparab/params.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pparab {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Arithmetic expression over x1..xn and t.
///
/// Grammar (whitespace-insensitive):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | '+' unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' digits | 't' | func '(' expr ')' | '(' expr ')'
///   func    := abs | log | exp | sqrt
/// '^' binds tighter than unary minus and is right-associative.
class Expression {
public:
    /// Throws ParseError; variables x_k with k > n are rejected.
    static Expression parse(std::string_view text, int n);

    [[nodiscard]] double operator()(const Point& p) const;
    [[nodiscard]] const std::string& source() const { return source_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace pparab
