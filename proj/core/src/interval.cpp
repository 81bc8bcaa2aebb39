#include "ivelvp/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ivelvp/error.hpp"

namespace ivelvp {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        std::ostringstream os;
        os << "interval endpoints must be finite, got [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    if (lo > hi) {
        std::ostringstream os;
        os.precision(17);
        os << "interval lower endpoint exceeds upper: [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
}

Interval add(const Interval& a, const Interval& b) {
    return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval scalar_mul(double lambda, const Interval& a) {
    if (lambda >= 0.0) {
        return Interval(lambda * a.lo(), lambda * a.hi());
    }
    return Interval(lambda * a.hi(), lambda * a.lo());
}

Interval gh_diff(const Interval& a, const Interval& b) {
    const double dl = a.lo() - b.lo();
    const double du = a.hi() - b.hi();
    return Interval(std::min(dl, du), std::max(dl, du));
}

std::optional<Interval> hukuhara_diff(const Interval& a, const Interval& b, double tol) {
    const double lo = a.lo() - b.lo();
    const double hi = a.hi() - b.hi();
    if (lo <= hi) {
        return Interval(lo, hi);
    }
    if (lo - hi <= tol) {
        const double m = 0.5 * (lo + hi);
        return Interval(m, m);
    }
    return std::nullopt;
}

double hausdorff(const Interval& a, const Interval& b) {
    return std::max(std::abs(a.lo() - b.lo()), std::abs(a.hi() - b.hi()));
}

OrderVerdict compare(const Interval& a, const Interval& b) {
    OrderVerdict v;
    v.le = a.lo() <= b.lo() && a.hi() <= b.hi();
    v.lt = a.lo() < b.lo() && a.hi() < b.hi();
    return v;
}

bool contains_zero(const Interval& a, double tol) {
    return a.lo() - tol <= 0.0 && 0.0 <= a.hi() + tol;
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Eval: return "eval";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::Hypothesis: return "hypothesis";
        case ErrorKind::Io: return "io";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace ivelvp
