#include "ivelvp/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ivelvp {

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;
using Kind = Expr::Kind;

NodePtr make(Kind kind, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
}

struct FuncInfo {
    const char* name;
    Expr::Func func;
    std::size_t arity;
};

constexpr FuncInfo kFunctions[] = {
    {"exp", Expr::Func::Exp, 1},  {"ln", Expr::Func::Ln, 1},   {"sin", Expr::Func::Sin, 1},
    {"cos", Expr::Func::Cos, 1},  {"abs", Expr::Func::Abs, 1}, {"sqrt", Expr::Func::Sqrt, 1},
    {"min", Expr::Func::Min, 2},  {"max", Expr::Func::Max, 2},
};

const FuncInfo* find_function(std::string_view name) {
    for (const auto& f : kFunctions) {
        if (name == f.name) return &f;
    }
    return nullptr;
}

const char* function_name(Expr::Func func) {
    for (const auto& f : kFunctions) {
        if (f.func == func) return f.name;
    }
    return "?";
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

    NodePtr parse_all() {
        NodePtr n = sum();
        skip_ws();
        if (pos_ != src_.size()) {
            fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        }
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr sum() {
        NodePtr lhs = product();
        for (;;) {
            if (accept('+')) {
                lhs = make(Kind::Add, {lhs, product()});
            } else if (accept('-')) {
                lhs = make(Kind::Sub, {lhs, product()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr product() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Kind::Mul, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Kind::Div, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Kind::Neg, {unary()});
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Kind::Pow, {base, unary()});
        return base;
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size() || text == ".") {
            fail_at("malformed number '" + text + "'", start);
        }
        auto n = std::make_shared<Node>();
        n->kind = Kind::Number;
        n->value = v;
        return n;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            NodePtr n = sum();
            expect(')');
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        skip_ws();
        const bool is_call = pos_ < src_.size() && src_[pos_] == '(';
        if (!is_call) {
            const auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) fail_at("unknown identifier '" + std::string(name) + "'", start);
            auto n = std::make_shared<Node>();
            n->kind = Kind::Variable;
            n->slot = static_cast<std::size_t>(it - vars_.begin());
            return n;
        }
        ++pos_;
        if (name == "ite") {
            NodePtr cond = comparison();
            expect(',');
            NodePtr a = sum();
            expect(',');
            NodePtr b = sum();
            if (accept(',')) fail_at("arity mismatch: ite takes 3 arguments", start);
            expect(')');
            return make(Kind::Ite, {cond, a, b});
        }
        const FuncInfo* info = find_function(name);
        if (info == nullptr) fail_at("unknown function '" + std::string(name) + "'", start);
        std::vector<NodePtr> args;
        if (!accept(')')) {
            do {
                args.push_back(sum());
            } while (accept(','));
            expect(')');
        }
        if (args.size() != info->arity) {
            fail_at("arity mismatch: " + std::string(name) + " takes " + std::to_string(info->arity) +
                        " argument(s), got " + std::to_string(args.size()),
                    start);
        }
        auto n = std::make_shared<Node>();
        n->kind = Kind::Call;
        n->func = info->func;
        n->args = std::move(args);
        return n;
    }

    NodePtr comparison() {
        NodePtr lhs = sum();
        skip_ws();
        Expr::Cmp cmp;
        if (src_.substr(pos_, 2) == "<=") {
            cmp = Expr::Cmp::Le;
            pos_ += 2;
        } else if (src_.substr(pos_, 2) == ">=") {
            cmp = Expr::Cmp::Ge;
            pos_ += 2;
        } else if (src_.substr(pos_, 2) == "==") {
            cmp = Expr::Cmp::Eq;
            pos_ += 2;
        } else if (src_.substr(pos_, 1) == "<") {
            cmp = Expr::Cmp::Lt;
            pos_ += 1;
        } else if (src_.substr(pos_, 1) == ">") {
            cmp = Expr::Cmp::Gt;
            pos_ += 1;
        } else {
            fail("expected comparison operator in ite condition");
        }
        NodePtr rhs = sum();
        auto n = std::make_shared<Node>();
        n->kind = Kind::Compare;
        n->cmp = cmp;
        n->args = {lhs, rhs};
        return n;
    }

    std::string_view src_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, std::span<const double> vals);

bool eval_cond(const Node& n, std::span<const double> vals) {
    const double a = eval_node(*n.args[0], vals);
    const double b = eval_node(*n.args[1], vals);
    switch (n.cmp) {
        case Expr::Cmp::Lt: return a < b;
        case Expr::Cmp::Le: return a <= b;
        case Expr::Cmp::Gt: return a > b;
        case Expr::Cmp::Ge: return a >= b;
        case Expr::Cmp::Eq: return a == b;
    }
    return false;
}

double eval_node(const Node& n, std::span<const double> vals) {
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Variable: return vals[n.slot];
        case Kind::Neg: return -eval_node(*n.args[0], vals);
        case Kind::Add: return eval_node(*n.args[0], vals) + eval_node(*n.args[1], vals);
        case Kind::Sub: return eval_node(*n.args[0], vals) - eval_node(*n.args[1], vals);
        case Kind::Mul: return eval_node(*n.args[0], vals) * eval_node(*n.args[1], vals);
        case Kind::Div: {
            const double a = eval_node(*n.args[0], vals);
            const double b = eval_node(*n.args[1], vals);
            if (b == 0.0) throw EvalError("division by zero");
            return a / b;
        }
        case Kind::Pow: {
            const double a = eval_node(*n.args[0], vals);
            const double b = eval_node(*n.args[1], vals);
            const double r = std::pow(a, b);
            if (std::isnan(r)) throw EvalError("power undefined for base " + std::to_string(a));
            if (std::isinf(r) && a == 0.0) throw EvalError("division by zero in power");
            return r;
        }
        case Kind::Call: {
            const double a = eval_node(*n.args[0], vals);
            switch (n.func) {
                case Expr::Func::Exp: return std::exp(a);
                case Expr::Func::Ln:
                    if (a <= 0.0) throw EvalError("ln of non-positive value " + std::to_string(a));
                    return std::log(a);
                case Expr::Func::Sin: return std::sin(a);
                case Expr::Func::Cos: return std::cos(a);
                case Expr::Func::Abs: return std::abs(a);
                case Expr::Func::Sqrt:
                    if (a < 0.0) throw EvalError("sqrt of negative value " + std::to_string(a));
                    return std::sqrt(a);
                case Expr::Func::Min: return std::min(a, eval_node(*n.args[1], vals));
                case Expr::Func::Max: return std::max(a, eval_node(*n.args[1], vals));
            }
            return 0.0;
        }
        case Kind::Ite:
            return eval_cond(*n.args[0], vals) ? eval_node(*n.args[1], vals) : eval_node(*n.args[2], vals);
        case Kind::Compare: return eval_cond(n, vals) ? 1.0 : 0.0;
    }
    return 0.0;
}

std::string format_number(double v) {
    char buf[64];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void print_node(const Node& n, const std::vector<std::string>& vars, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        print_node(*n.args[0], vars, out);
        out += op;
        print_node(*n.args[1], vars, out);
        out += ')';
    };
    switch (n.kind) {
        case Kind::Number:
            // negative literals only arise from Expr::constant; keep them parseable
            if (n.value < 0.0 || std::signbit(n.value)) {
                out += "(0-" + format_number(-n.value) + ")";
            } else {
                out += format_number(n.value);
            }
            return;
        case Kind::Variable: out += vars[n.slot]; return;
        case Kind::Neg:
            out += "(-";
            print_node(*n.args[0], vars, out);
            out += ')';
            return;
        case Kind::Add: binary(" + "); return;
        case Kind::Sub: binary(" - "); return;
        case Kind::Mul: binary(" * "); return;
        case Kind::Div: binary(" / "); return;
        case Kind::Pow: binary("^"); return;
        case Kind::Call:
            out += function_name(n.func);
            out += '(';
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i > 0) out += ", ";
                print_node(*n.args[i], vars, out);
            }
            out += ')';
            return;
        case Kind::Ite:
            out += "ite(";
            print_node(*n.args[0], vars, out);
            out += ", ";
            print_node(*n.args[1], vars, out);
            out += ", ";
            print_node(*n.args[2], vars, out);
            out += ')';
            return;
        case Kind::Compare: {
            static const char* ops[] = {" < ", " <= ", " > ", " >= ", " == "};
            print_node(*n.args[0], vars, out);
            out += ops[static_cast<int>(n.cmp)];
            print_node(*n.args[1], vars, out);
            return;
        }
    }
}

bool same_tree(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
        case Kind::Number:
            if (a.value != b.value) return false;
            break;
        case Kind::Variable:
            if (a.slot != b.slot) return false;
            break;
        case Kind::Call:
            if (a.func != b.func) return false;
            break;
        case Kind::Compare:
            if (a.cmp != b.cmp) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!same_tree(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

}  // namespace

Expr Expr::parse(std::string_view src, std::vector<std::string> variables) {
    Parser p(src, variables);
    NodePtr root = p.parse_all();
    return Expr(std::move(root), std::move(variables));
}

Expr Expr::constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = v;
    return Expr(std::move(n), {});
}

double Expr::eval(std::span<const double> values) const {
    if (!root_) throw EvalError("empty expression");
    if (values.size() < variables_.size()) {
        throw EvalError("expected " + std::to_string(variables_.size()) + " variable values, got " +
                        std::to_string(values.size()));
    }
    return eval_node(*root_, values);
}

double Expr::eval(const std::map<std::string, double>& env) const {
    std::vector<double> vals(variables_.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        const auto it = env.find(variables_[i]);
        if (it == env.end()) throw EvalError("unbound variable '" + variables_[i] + "'");
        vals[i] = it->second;
    }
    return eval(vals);
}

std::string Expr::print() const {
    std::string out;
    if (root_) print_node(*root_, variables_, out);
    return out;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.variables_ != b.variables_) return false;
    if (!a.root_ || !b.root_) return a.root_ == b.root_;
    return same_tree(*a.root_, *b.root_);
}

}  // namespace ivelvp
