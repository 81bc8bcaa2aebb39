#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ivelvp/interval.hpp"

namespace ivelvp {

using Point = std::vector<double>;

enum class ErrorKind {
    Parse,
    Eval,
    Domain,
    InvalidArgument,
    Hypothesis,
    Io,
    Internal,
};

const char* to_string(ErrorKind kind) noexcept;

// Points and interval values that explain a rejection (a violating pair, a
// stuck point, a failing boundary value, ...).
struct Witness {
    std::vector<Point> points;
    std::vector<Interval> values;

    bool empty() const noexcept { return points.empty() && values.empty(); }
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, Witness witness = {})
        : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const Witness& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    Witness witness_;
};

}  // namespace ivelvp
