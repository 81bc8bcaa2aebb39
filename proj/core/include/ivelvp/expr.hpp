#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivelvp/error.hpp"

namespace ivelvp {

/// Thrown for malformed expression text. `offset()` is the byte offset of
/// the offending token in the source.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(ErrorKind::Parse, what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public Error {
public:
    explicit EvalError(const std::string& what) : Error(ErrorKind::Eval, what) {}
};

/// Immutable parsed scalar expression.
///
/// Grammar (lowest to highest precedence):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          -- right associative
///   primary := number | variable | call | '(' sum ')'
///   call    := name '(' args ')'
///   cond    := sum ('<' | '<=' | '>' | '>=' | '==') sum   -- only as ite's first argument
///
/// Functions: exp ln sin cos abs sqrt (unary), min max (binary),
/// ite(cond, then, else). Comparisons inside ite are plain IEEE comparisons.
/// Variables are resolved against the list passed to parse(); their position
/// in that list is the slot read by eval().
class Expr {
public:
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call, Ite, Compare };
    enum class Func { Exp, Ln, Sin, Cos, Abs, Sqrt, Min, Max };
    enum class Cmp { Lt, Le, Gt, Ge, Eq };

    struct Node {
        Kind kind = Kind::Number;
        double value = 0.0;
        std::size_t slot = 0;
        Func func = Func::Exp;
        Cmp cmp = Cmp::Lt;
        std::vector<std::shared_ptr<const Node>> args;
    };
    using NodePtr = std::shared_ptr<const Node>;

    Expr() = default;

    static Expr parse(std::string_view src, std::vector<std::string> variables);
    static Expr constant(double v);

    double eval(std::span<const double> values) const;
    double eval(const std::map<std::string, double>& env) const;

    /// Fully parenthesized source that parses back to an identical tree.
    std::string print() const;

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const NodePtr& root() const noexcept { return root_; }
    bool empty() const noexcept { return root_ == nullptr; }

    /// Structural equality of the trees and variable lists.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    Expr(NodePtr root, std::vector<std::string> variables)
        : root_(std::move(root)), variables_(std::move(variables)) {}

    NodePtr root_;
    std::vector<std::string> variables_;
};

}  // namespace ivelvp
