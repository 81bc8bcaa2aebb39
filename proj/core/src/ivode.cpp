#include "ivelvp/ivode.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ivelvp {

PiecewiseConstantControl::PiecewiseConstantControl(std::vector<Point> pieces, double horizon)
    : pieces_(std::move(pieces)), horizon_(horizon) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw Error(ErrorKind::InvalidArgument, "control horizon must be positive");
    }
    if (pieces_.empty()) pieces_.emplace_back();
    for (const auto& p : pieces_) {
        if (p.size() != pieces_.front().size()) {
            throw Error(ErrorKind::InvalidArgument, "control pieces must share one dimension");
        }
        for (double v : p) {
            if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "control values must be finite");
        }
    }
}

PiecewiseConstantControl PiecewiseConstantControl::constant(Point value, double horizon) {
    return PiecewiseConstantControl({std::move(value)}, horizon);
}

const Point& PiecewiseConstantControl::at(double t) const {
    const double k = std::floor(t / horizon_ * static_cast<double>(pieces_.size()));
    const auto i = static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(pieces_.size() - 1)));
    return pieces_[i];
}

Point PiecewiseConstantControl::flatten() const {
    Point out;
    for (const auto& p : pieces_) out.insert(out.end(), p.begin(), p.end());
    return out;
}

double control_distance(const PiecewiseConstantControl& a, const PiecewiseConstantControl& b) {
    if (a.pieces() != b.pieces() || a.dim() != b.dim()) {
        throw Error(ErrorKind::InvalidArgument, "controls have different shapes");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < a.pieces(); ++k) d = std::max(d, euclidean(a.piece(k), b.piece(k)));
    return d;
}

namespace {

struct Rates {
    double lo;
    double hi;
};

Rates dynamics(const IntervalIVP& p, double t, double xl, double xu, std::span<const double> u) {
    const double fl = p.lower(t, xl, xu, u);
    const double fu = p.upper(t, xl, xu, u);
    if (!std::isfinite(fl) || !std::isfinite(fu)) {
        throw Error(ErrorKind::Eval, "dynamics are not finite", Witness{{{t, xl, xu}}, {}});
    }
    if (fl > fu + kEndpointInversionTol * (1.0 + std::abs(fu))) {
        std::ostringstream os;
        os.precision(17);
        os << "dynamics endpoint inversion at t=" << t << ": " << fl << " > " << fu;
        throw Error(ErrorKind::Domain, os.str(), Witness{{{t, xl, xu}}, {}});
    }
    if (p.mode == DiffMode::I) return {fl, fu};
    return {fu, fl};
}

// Composite rule over equally spaced samples: Simpson, with a 3/8 tail for
// an odd panel count and the trapezoid for a single panel.
double quadrature(std::span<const double> y, double h) {
    const std::size_t n = y.size() - 1;
    if (n == 0) return 0.0;
    if (n == 1) return 0.5 * h * (y[0] + y[1]);
    const std::size_t even = n % 2 == 0 ? n : n - 3;
    double s = 0.0;
    if (even > 0) {
        double acc = y[0] + y[even];
        for (std::size_t i = 1; i < even; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
        s = acc * h / 3.0;
    }
    if (even != n) s += 3.0 * h / 8.0 * (y[n - 3] + 3.0 * y[n - 2] + 3.0 * y[n - 1] + y[n]);
    return s;
}

}  // namespace

IntervalTrajectory solve_ivp(const IntervalIVP& p, const PiecewiseConstantControl& u) {
    if (!(p.horizon > 0.0) || !std::isfinite(p.horizon)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
    if (p.step < 0.0 || !std::isfinite(p.step)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
    if (std::abs(u.horizon() - p.horizon) > 1e-12 * p.horizon) {
        throw Error(ErrorKind::InvalidArgument, "control horizon differs from the problem horizon");
    }
    const double h0 = p.step > 0.0 ? std::min(p.step, p.horizon) : p.horizon / 1000.0;
    const std::size_t K = u.pieces();
    auto spp = static_cast<std::size_t>(std::ceil(p.horizon / static_cast<double>(K) / h0 - 1e-9));
    spp = std::max<std::size_t>(spp, 1);
    if (spp % 2 == 1) ++spp;
    const std::size_t N = spp * K;
    const double h = p.horizon / static_cast<double>(N);

    IntervalTrajectory x;
    x.mode = p.mode;
    x.steps_per_piece = spp;
    x.times.push_back(0.0);
    x.states.push_back(p.x0);
    double xl = p.x0.lo(), xu = p.x0.hi();
    for (std::size_t k = 0; k < N; ++k) {
        const double t = p.horizon * static_cast<double>(k) / static_cast<double>(N);
        const Point& uk = u.piece(k / spp);
        const Rates k1 = dynamics(p, t, xl, xu, uk);
        const Rates k2 = dynamics(p, t + 0.5 * h, xl + 0.5 * h * k1.lo, xu + 0.5 * h * k1.hi, uk);
        const Rates k3 = dynamics(p, t + 0.5 * h, xl + 0.5 * h * k2.lo, xu + 0.5 * h * k2.hi, uk);
        const Rates k4 = dynamics(p, t + h, xl + h * k3.lo, xu + h * k3.hi, uk);
        double nl = xl + h / 6.0 * (k1.lo + 2.0 * k2.lo + 2.0 * k3.lo + k4.lo);
        double nu = xu + h / 6.0 * (k1.hi + 2.0 * k2.hi + 2.0 * k3.hi + k4.hi);
        if (!std::isfinite(nl) || !std::isfinite(nu)) {
            throw Error(ErrorKind::Eval, "trajectory diverged", Witness{{{t}}, {}});
        }
        if (nl > nu) {
            if (nl - nu > 1e-9 * (1.0 + std::max(std::abs(nl), std::abs(nu)))) break;
            nl = nu = 0.5 * (nl + nu);
        }
        xl = nl;
        xu = nu;
        x.times.push_back(p.horizon * static_cast<double>(k + 1) / static_cast<double>(N));
        x.states.emplace_back(xl, xu);
    }
    x.valid_until = x.times.back();
    x.complete = x.states.size() == N + 1;
    return x;
}

LipschitzEstimate lipschitz_estimate(const IntervalIVP& p, const StateRegion& region, std::size_t samples,
                                     std::uint64_t seed) {
    if (region.u_lower.size() != region.u_upper.size()) {
        throw Error(ErrorKind::InvalidArgument, "control bounds have different dimensions");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](const Interval& r) { return r.lo() + (r.hi() - r.lo()) * unit(rng); };
    auto draw_state = [&]() {
        double a = draw(region.xl), b = draw(region.xu);
        if (a > b) std::swap(a, b);
        return std::pair{a, b};
    };
    auto draw_u = [&]() {
        Point u(region.u_lower.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = region.u_lower[i] + (region.u_upper[i] - region.u_lower[i]) * unit(rng);
        }
        return u;
    };
    auto gap = [&](double t, std::pair<double, double> x, const Point& u, std::pair<double, double> y,
                   const Point& v) {
        const double a = std::abs(p.lower(t, x.first, x.second, u) - p.lower(t, y.first, y.second, v));
        const double b = std::abs(p.upper(t, x.first, x.second, u) - p.upper(t, y.first, y.second, v));
        return std::max(a, b);
    };
    LipschitzEstimate est;
    for (std::size_t s = 0; s < samples; ++s) {
        const double t = draw(region.t);
        const Point u = draw_u();
        const auto x1 = draw_state();
        const auto x2 = draw_state();
        const double dx = std::max(std::abs(x1.first - x2.first), std::abs(x1.second - x2.second));
        if (dx > 1e-12) est.k1 = std::max(est.k1, gap(t, x1, u, x2, u) / dx);
        if (!u.empty()) {
            const Point v = draw_u();
            const double du = euclidean(u, v);
            if (du > 1e-12) est.k2 = std::max(est.k2, gap(t, x1, u, x1, v) / du);
        }
    }
    return est;
}

Interval integrate_cost(const IntervalTrajectory& x, const PiecewiseConstantControl& u, const CostFn& L,
                        std::size_t begin, std::size_t end) {
    if (begin > end || end >= x.states.size()) {
        throw Error(ErrorKind::InvalidArgument, "integration range outside the trajectory");
    }
    const std::size_t spp = x.steps_per_piece;
    const double h = x.times.size() > 1 ? x.times[1] - x.times[0] : 0.0;
    double lo = 0.0, hi = 0.0;
    std::vector<double> yl, yu;
    std::size_t a = begin;
    while (a < end) {
        const std::size_t piece = a / spp;
        const std::size_t b = std::min(end, (piece + 1) * spp);
        const Point& uk = u.piece(piece);
        yl.clear();
        yu.clear();
        for (std::size_t j = a; j <= b; ++j) {
            const double t = x.times[j];
            const Interval& s = x.states[j];
            const double l = L.lower(t, s.lo(), s.hi(), uk);
            const double r = L.upper(t, s.lo(), s.hi(), uk);
            if (!std::isfinite(l) || !std::isfinite(r)) {
                throw Error(ErrorKind::Eval, "cost is not finite", Witness{{{t}}, {}});
            }
            if (l < 0.0) {
                std::ostringstream os;
                os.precision(17);
                os << "cost lower endpoint is negative at t=" << t << ": " << l;
                throw Error(ErrorKind::Hypothesis, os.str(), Witness{{{t}}, {}});
            }
            if (l > r) {
                std::ostringstream os;
                os.precision(17);
                os << "cost endpoint inversion at t=" << t << ": " << l << " > " << r;
                throw Error(ErrorKind::Domain, os.str(), Witness{{{t}}, {}});
            }
            yl.push_back(l);
            yu.push_back(r);
        }
        lo += quadrature(yl, h);
        hi += quadrature(yu, h);
        a = b;
    }
    return Interval(lo, std::max(lo, hi));
}

Interval cost_functional(const IntervalIVP& p, const PiecewiseConstantControl& u, const CostFn& L) {
    const IntervalTrajectory x = solve_ivp(p, u);
    if (!x.complete) {
        std::ostringstream os;
        os.precision(17);
        os << "trajectory ends at t=" << x.valid_until << " before the horizon " << p.horizon;
        throw Error(ErrorKind::Domain, os.str(), Witness{{{x.valid_until}}, {x.states.back()}});
    }
    return integrate_cost(x, u, L, 0, x.states.size() - 1);
}

std::size_t ControlFamily::size() const {
    if (pieces == 0 || levels == 0) throw Error(ErrorKind::InvalidArgument, "family needs pieces and levels");
    if (lower.size() != upper.size()) throw Error(ErrorKind::InvalidArgument, "family bounds differ in dimension");
    std::size_t n = 1;
    for (std::size_t k = 0; k < pieces * lower.size(); ++k) {
        if (n > kMaxFamilySize / levels) {
            throw Error(ErrorKind::InvalidArgument, "control family exceeds " + std::to_string(kMaxFamilySize) + " members");
        }
        n *= levels;
    }
    return n;
}

double ControlFamily::level(std::size_t axis, std::size_t j) const {
    if (levels == 1) return lower[axis];
    return lower[axis] + (upper[axis] - lower[axis]) * static_cast<double>(j) / static_cast<double>(levels - 1);
}

PiecewiseConstantControl ControlFamily::member(std::size_t index) const {
    const std::size_t m = lower.size();
    std::vector<Point> values(pieces, Point(m));
    for (std::size_t slot = pieces * m; slot-- > 0;) {
        values[slot / m][slot % m] = level(slot % m, index % levels);
        index /= levels;
    }
    return PiecewiseConstantControl(std::move(values), horizon);
}

std::size_t ControlFamily::index_of(const PiecewiseConstantControl& u) const {
    const std::size_t m = lower.size();
    if (u.pieces() != pieces || u.dim() != m) {
        throw Error(ErrorKind::InvalidArgument, "control does not have the family's shape");
    }
    std::size_t index = 0;
    for (std::size_t slot = 0; slot < pieces * m; ++slot) {
        const double v = u.piece(slot / m)[slot % m];
        std::size_t found = levels;
        for (std::size_t j = 0; j < levels && found == levels; ++j) {
            if (std::abs(level(slot % m, j) - v) <= 1e-9 * (1.0 + std::abs(v))) found = j;
        }
        if (found == levels) throw Error(ErrorKind::InvalidArgument, "control is not a member of the family");
        index = index * levels + found;
    }
    return index;
}

ControlSearchResult epsilon_minimal_control(const IntervalIVP& p, const CostFn& L, double epsilon,
                                            const ControlFamily& family, const PiecewiseConstantControl& u0) {
    ControlFamily fam = family;
    fam.horizon = p.horizon;
    for (std::size_t i = 0; i < fam.lower.size(); ++i) {
        if (!(fam.lower[i] <= fam.upper[i])) throw Error(ErrorKind::InvalidArgument, "family box has lower > upper");
    }
    ControlSearchResult r;
    r.family_size = fam.size();
    const std::size_t start = fam.index_of(u0);

    std::vector<std::size_t> members;
    std::vector<Point> points;
    std::vector<Interval> values;
    std::vector<PiecewiseConstantControl> controls;
    std::size_t x0 = r.family_size;
    for (std::size_t k = 0; k < r.family_size; ++k) {
        PiecewiseConstantControl u = fam.member(k);
        try {
            values.push_back(cost_functional(p, u, L));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Domain && e.kind() != ErrorKind::Eval) throw;
            r.excluded.push_back({k, e.what()});
            continue;
        }
        if (k == start) x0 = members.size();
        members.push_back(k);
        points.push_back(u.flatten());
        controls.push_back(std::move(u));
    }
    if (x0 == r.family_size) throw Error(ErrorKind::Domain, "the initial control is excluded from the family");

    const IndexMetric d = [&controls](std::size_t i, std::size_t j) { return control_distance(controls[i], controls[j]); };
    std::ostringstream desc;
    desc << "quantized control family: " << fam.pieces << " pieces x " << fam.lower.size() << " controls x "
         << fam.levels << " levels (" << members.size() << " admissible, " << r.excluded.size() << " excluded)";
    r.certificate = ekeland_minimize(points, values, d, epsilon, x0, members.size() + 1, desc.str());
    const std::size_t best =
        static_cast<std::size_t>(std::find(points.begin(), points.end(), r.certificate.x_bar) - points.begin());
    r.index = members[best];
    r.control = controls[best];
    r.cost = values[best];
    return r;
}

}  // namespace ivelvp
