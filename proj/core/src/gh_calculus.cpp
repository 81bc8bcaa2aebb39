#include "ivelvp/gh_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ivelvp {

namespace {

Interval richardson(const Interval& coarse, const Interval& fine) {
    const double lo = 2.0 * fine.lo() - coarse.lo();
    const double hi = 2.0 * fine.hi() - coarse.hi();
    if (lo <= hi && std::isfinite(lo) && std::isfinite(hi)) return Interval(lo, hi);
    return fine;
}

double magnitude(const Interval& a) { return std::max(std::abs(a.lo()), std::abs(a.hi())); }

}  // namespace

double StepSchedule::step(int k) const { return std::ldexp(first, -k); }

GHDerivative gateaux(const IntervalFn& f, std::span<const double> x, std::span<const double> h,
                     const StepSchedule& schedule) {
    if (x.size() != h.size()) throw Error(ErrorKind::InvalidArgument, "point and direction dimensions differ");
    const Interval fx = f(x);
    Point moved(x.size());
    auto quotient = [&](double t) {
        for (std::size_t i = 0; i < x.size(); ++i) moved[i] = x[i] + t * h[i];
        return scalar_mul(1.0 / t, gh_diff(f(moved), fx));
    };

    GHDerivative d;
    d.residual = std::numeric_limits<double>::infinity();
    double t = schedule.step(0);
    Interval prev = quotient(t);
    d.t_sequence.push_back(t);
    d.value = prev;
    for (int k = 1; k < schedule.count; ++k) {
        t = schedule.step(k);
        const Interval cur = quotient(t);
        d.t_sequence.push_back(t);
        d.residual = hausdorff(prev, cur);
        if (d.residual <= schedule.tol) {
            d.converged = true;
            d.value = richardson(prev, cur);
            return d;
        }
        d.value = cur;
        prev = cur;
    }
    return d;
}

Interval IntervalCurve::operator()(double t) const {
    const double lo = lower(t);
    const double hi = upper(t);
    if (lo > hi && lo - hi <= kEndpointInversionTol) return Interval(0.5 * (lo + hi), 0.5 * (lo + hi));
    if (lo > hi) {
        std::ostringstream os;
        os.precision(17);
        os << "curve endpoint inversion at t=" << t << ": " << lo << " > " << hi;
        throw Error(ErrorKind::Domain, os.str(), Witness{{{t}}, {}});
    }
    return Interval(lo, hi);
}

std::string to_string(DiffMode m) { return m == DiffMode::I ? "i" : "ii"; }

GeneralizedDerivative generalized_derivative(const IntervalCurve& c, double t0, DiffMode mode,
                                             const StepSchedule& schedule) {
    GeneralizedDerivative out;
    if (!(t0 > c.a && t0 < c.b)) {
        out.failure = "t0 is not interior to the curve's range";
        return out;
    }
    const Interval ct0 = c(t0);
    const double sign = mode == DiffMode::I ? 1.0 : -1.0;

    // A(h) = (c(t0+h) (-)H c(t0)) / h,  B(h) = (c(t0) (-)H c(t0-h)) / h
    auto quotients = [&](double h, Interval& a, Interval& b) -> bool {
        const Interval fwd = c(t0 + h);
        const Interval bwd = c(t0 - h);
        const double tol = 64.0 * std::numeric_limits<double>::epsilon() *
                           (1.0 + std::max({magnitude(fwd), magnitude(bwd), magnitude(ct0)}));
        const auto da = hukuhara_diff(fwd, ct0, tol);
        if (!da) {
            std::ostringstream os;
            os << "Hukuhara difference c(t0+h) - c(t0) does not exist at h=" << h;
            out.failure = os.str();
            return false;
        }
        const auto db = hukuhara_diff(ct0, bwd, tol);
        if (!db) {
            std::ostringstream os;
            os << "Hukuhara difference c(t0) - c(t0-h) does not exist at h=" << h;
            out.failure = os.str();
            return false;
        }
        a = scalar_mul(1.0 / h, *da);
        b = scalar_mul(1.0 / h, *db);
        return true;
    };

    Interval a_prev, b_prev;
    const double room = std::min(t0 - c.a, c.b - t0);
    int k = 0;
    while (k < schedule.count && schedule.step(k) >= room) ++k;
    if (k >= schedule.count) {
        out.failure = "t0 too close to the range boundary for the step schedule";
        return out;
    }
    double h = sign * schedule.step(k);
    out.h_sequence.push_back(h);
    if (!quotients(h, a_prev, b_prev)) return out;
    for (++k; k < schedule.count; ++k) {
        h = sign * schedule.step(k);
        out.h_sequence.push_back(h);
        Interval a, b;
        if (!quotients(h, a, b)) return out;
        if (hausdorff(a, a_prev) <= schedule.tol && hausdorff(b, b_prev) <= schedule.tol) {
            const Interval la = richardson(a_prev, a);
            const Interval lb = richardson(b_prev, b);
            if (hausdorff(la, lb) > schedule.tol) {
                std::ostringstream os;
                os << "one-sided limits disagree: " << la << " vs " << lb;
                out.failure = os.str();
                return out;
            }
            out.value = Interval(0.5 * (la.lo() + lb.lo()), 0.5 * (la.hi() + lb.hi()));
            return out;
        }
        a_prev = a;
        b_prev = b;
    }
    out.failure = "quotients did not converge along the step schedule";
    return out;
}

double simpson(const std::function<double(double)>& g, double a, double b, std::size_t n_panels) {
    if (n_panels == 0) n_panels = 2;
    if (n_panels % 2 == 1) ++n_panels;
    if (a == b) return 0.0;
    const double h = (b - a) / static_cast<double>(n_panels);
    double s = g(a) + g(b);
    for (std::size_t i = 1; i < n_panels; ++i) {
        const double t = a + h * static_cast<double>(i);
        s += (i % 2 == 1 ? 4.0 : 2.0) * g(t);
    }
    return s * h / 3.0;
}

Interval aumann_integral(const IntervalCurve& c, double a, double b, std::size_t n_panels) {
    if (a > b) throw Error(ErrorKind::InvalidArgument, "integration bounds must satisfy a <= b");
    const double lo = simpson(c.lower, a, b, n_panels);
    const double hi = simpson(c.upper, a, b, n_panels);
    if (lo > hi) {
        if (lo - hi <= kEndpointInversionTol * (1.0 + std::abs(lo))) return Interval(0.5 * (lo + hi), 0.5 * (lo + hi));
        std::ostringstream os;
        os.precision(17);
        os << "endpoint inversion after quadrature: " << lo << " > " << hi;
        throw Error(ErrorKind::Domain, os.str());
    }
    return Interval(lo, hi);
}

}  // namespace ivelvp
