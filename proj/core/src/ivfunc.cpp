#include "ivelvp/ivfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

namespace ivelvp {

IntervalFn::IntervalFn(ScalarFn lower, ScalarFn upper, Domain domain)
    : lower_(std::move(lower)), upper_(std::move(upper)), domain_(std::move(domain)) {}

IntervalFn IntervalFn::from_exprs(const Expr& lower, const Expr& upper, Domain domain) {
    return IntervalFn([lower](std::span<const double> x) { return lower.eval(x); },
                      [upper](std::span<const double> x) { return upper.eval(x); }, std::move(domain));
}

IntervalFn IntervalFn::tabulated(Domain domain, std::vector<Interval> values) {
    if (!domain.is_finite()) throw Error(ErrorKind::Domain, "tabulated functions need a finite domain");
    const auto& coords = domain.finite_points().coords;
    if (values.size() != coords.size()) {
        throw Error(ErrorKind::Domain, "value table has " + std::to_string(values.size()) + " entries for " +
                                           std::to_string(coords.size()) + " points");
    }
    auto table = std::make_shared<std::map<Point, Interval>>();
    for (std::size_t i = 0; i < coords.size(); ++i) table->emplace(coords[i], values[i]);
    auto lookup = [table](std::span<const double> x) -> const Interval& {
        const auto it = table->find(Point(x.begin(), x.end()));
        if (it == table->end()) throw Error(ErrorKind::Domain, "point outside the tabulated finite space");
        return it->second;
    };
    return IntervalFn([lookup](std::span<const double> x) { return lookup(x).lo(); },
                      [lookup](std::span<const double> x) { return lookup(x).hi(); }, std::move(domain));
}

Interval IntervalFn::operator()(std::span<const double> x) const {
    const double lo = lower_(x);
    const double hi = upper_(x);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::Eval, "endpoint function is not finite", Witness{{Point(x.begin(), x.end())}, {}});
    }
    if (lo > hi) {
        if (lo - hi > kEndpointInversionTol) {
            std::ostringstream os;
            os.precision(17);
            os << "endpoint inversion: lower " << lo << " exceeds upper " << hi;
            throw Error(ErrorKind::Domain, os.str(), Witness{{Point(x.begin(), x.end())}, {}});
        }
        const double m = 0.5 * (lo + hi);
        return Interval(m, m);
    }
    return Interval(lo, hi);
}

std::vector<Interval> sample(const IntervalFn& f, const PointSet& set) {
    std::vector<Interval> out;
    out.reserve(set.size());
    for (const auto& p : set.points()) out.push_back(f(p));
    return out;
}

Interval infimum_of(std::span<const Interval> values) {
    if (values.empty()) throw Error(ErrorKind::Domain, "infimum over an empty set");
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& v : values) {
        lo = std::min(lo, v.lo());
        hi = std::min(hi, v.hi());
    }
    return Interval(lo, hi);
}

InfimumReport infimum(const IntervalFn& f) {
    const PointSet set = f.domain().enumerate();
    const auto values = sample(f, set);
    InfimumReport r;
    r.value = infimum_of(values);
    r.evaluated = set.size();
    r.exact = f.domain().is_finite();
    constexpr double kTieTol = 1e-9;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].lo() <= r.value.lo() + kTieTol) r.lower_argmin.push_back(set[i]);
        if (values[i].hi() <= r.value.hi() + kTieTol) r.upper_argmin.push_back(set[i]);
    }
    return r;
}

LscProbeReport lsc_probe(const IntervalFn& f, const Interval& level, std::span<const ConvergentSequence> samples,
                         double tol) {
    LscProbeReport report;
    const Interval relaxed = shifted(level, tol);
    for (const auto& seq : samples) {
        LscSequenceVerdict v;
        const bool inside = !seq.terms.empty() && std::all_of(seq.terms.begin(), seq.terms.end(), [&](const Point& p) {
            return weakly_below(f(p), relaxed);
        });
        v.limit_value = f(seq.limit);
        if (!inside) {
            v.status = ProbeStatus::Skipped;
        } else if (weakly_below(v.limit_value, relaxed)) {
            v.status = ProbeStatus::Passed;
        } else {
            v.status = ProbeStatus::Failed;
            report.passed = false;
        }
        report.sequences.push_back(v);
    }
    return report;
}

std::vector<std::size_t> minimal_indices(std::span<const Interval> values) {
    // x is dominated iff some y has lo(y) < lo(x) and hi(y) < hi(x). Sweep in
    // increasing lo, keeping the smallest hi among strictly smaller lo.
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a].lo() < values[b].lo(); });
    std::vector<char> minimal(values.size(), 0);
    double best_hi = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const double lo = values[order[i]].lo();
        while (j < order.size() && values[order[j]].lo() == lo) ++j;
        for (std::size_t k = i; k < j; ++k) {
            minimal[order[k]] = !(best_hi < values[order[k]].hi());
        }
        for (std::size_t k = i; k < j; ++k) best_hi = std::min(best_hi, values[order[k]].hi());
        i = j;
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (minimal[k]) out.push_back(k);
    }
    return out;
}

std::vector<Point> minimal_solutions(const IntervalFn& f) {
    const PointSet set = f.domain().enumerate();
    const auto values = sample(f, set);
    std::vector<Point> out;
    for (std::size_t i : minimal_indices(values)) out.push_back(set[i]);
    return out;
}

std::string to_string(ProbeStatus s) {
    switch (s) {
        case ProbeStatus::Passed: return "passed";
        case ProbeStatus::Failed: return "failed";
        case ProbeStatus::Skipped: return "skipped";
    }
    return "unknown";
}

}  // namespace ivelvp
