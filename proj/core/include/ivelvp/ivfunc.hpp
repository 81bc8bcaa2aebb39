#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ivelvp/domain.hpp"
#include "ivelvp/expr.hpp"
#include "ivelvp/interval.hpp"

namespace ivelvp {

using ScalarFn = std::function<double(std::span<const double>)>;

/// Tolerance absorbing rounding when lower(x) slightly exceeds upper(x).
inline constexpr double kEndpointInversionTol = 1e-12;

/// Interval-valued function x -> [lower(x), upper(x)] over a domain.
class IntervalFn {
public:
    IntervalFn(ScalarFn lower, ScalarFn upper, Domain domain);

    /// Endpoint expressions over the domain coordinates; variables must be
    /// named as the coordinates are passed (e.g. {"x"} or {"x1", "x2"}).
    static IntervalFn from_exprs(const Expr& lower, const Expr& upper, Domain domain);

    /// Value table over a finite space, one interval per point.
    static IntervalFn tabulated(Domain domain, std::vector<Interval> values);

    /// Evaluates both endpoints; throws Domain on endpoint inversion beyond
    /// kEndpointInversionTol and lets expression errors propagate.
    Interval operator()(std::span<const double> x) const;

    double lower(std::span<const double> x) const { return lower_(x); }
    double upper(std::span<const double> x) const { return upper_(x); }
    const Domain& domain() const noexcept { return domain_; }

private:
    ScalarFn lower_;
    ScalarFn upper_;
    Domain domain_;
};

inline Interval eval_fn(const IntervalFn& f, std::span<const double> x) { return f(x); }

/// Values of f at every point of a set, in set order.
std::vector<Interval> sample(const IntervalFn& f, const PointSet& set);

struct InfimumReport {
    Interval value;
    /// Every evaluated point within 1e-9 of the per-endpoint minimum.
    std::vector<Point> lower_argmin;
    std::vector<Point> upper_argmin;
    std::size_t evaluated = 0;
    bool exact = false;  // true on finite spaces
};

InfimumReport infimum(const IntervalFn& f);
/// Componentwise infimum of an already-sampled set of values.
Interval infimum_of(std::span<const Interval> values);

struct ConvergentSequence {
    std::vector<Point> terms;
    Point limit;
};

enum class ProbeStatus { Passed, Failed, Skipped };

struct LscSequenceVerdict {
    ProbeStatus status = ProbeStatus::Skipped;
    Interval limit_value;
};

/// Heuristic falsifier for lower semicontinuity in the interval order:
/// every supplied sequence lying entirely in {x : f(x) <= level} must have
/// its limit in that set too. Passing proves nothing; one failure is a
/// counterexample.
struct LscProbeReport {
    bool passed = true;
    std::vector<LscSequenceVerdict> sequences;
};

LscProbeReport lsc_probe(const IntervalFn& f, const Interval& level, std::span<const ConvergentSequence> samples,
                         double tol = 1e-12);

/// Indices of the points no other point strictly dominates.
std::vector<std::size_t> minimal_indices(std::span<const Interval> values);

/// Minimal solutions over the evaluated set (exact on finite spaces, grid
/// approximation on boxes).
std::vector<Point> minimal_solutions(const IntervalFn& f);

std::string to_string(ProbeStatus s);

}  // namespace ivelvp
