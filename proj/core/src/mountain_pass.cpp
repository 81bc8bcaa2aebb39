#include "ivelvp/mountain_pass.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace ivelvp {

namespace {

Point lerp(const Point& a, const Point& b, double s) {
    Point p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + s * (b[i] - a[i]);
    return p;
}

bool on_box(const Box& omega, const Point& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < omega.lower[i] - 1e-12 || p[i] > omega.upper[i] + 1e-12) return false;
    }
    return true;
}

bool strictly_inside(const Box& omega, const Point& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > omega.lower[i] && p[i] < omega.upper[i])) return false;
    }
    return true;
}

// Golden-section maximization of g on [a, b]; returns the abscissa.
double golden_max(const std::function<double(double)>& g, double a, double b) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
        if (gc >= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    return gc >= gd ? c : d;
}

}  // namespace

std::vector<Point> PathSpec::vertices() const {
    std::vector<Point> v;
    v.reserve(nodes.size() + 2);
    v.push_back(p0);
    v.insert(v.end(), nodes.begin(), nodes.end());
    v.push_back(p1);
    return v;
}

PathValue path_value(const IntervalFn& f, const PathSpec& path, const Box& omega, std::size_t segment_samples) {
    const auto v = path.vertices();
    const std::size_t S = std::max<std::size_t>(segment_samples, 2);
    double best_lo = -std::numeric_limits<double>::infinity();
    double best_hi = -std::numeric_limits<double>::infinity();
    PathValue out;
    auto consider = [&](const Point& p) {
        const Interval y = f(p);
        if (y.lo() > best_lo) {
            best_lo = y.lo();
            out.argmax_lower = p;
        }
        if (y.hi() > best_hi) {
            best_hi = y.hi();
            out.argmax_upper = p;
        }
    };
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const Point& a = v[k];
        const Point& b = v[k + 1];
        std::size_t arg_lo = 0, arg_hi = 0;
        double seg_lo = -std::numeric_limits<double>::infinity();
        double seg_hi = seg_lo;
        for (std::size_t s = 0; s <= S; ++s) {
            const Point p = lerp(a, b, static_cast<double>(s) / static_cast<double>(S));
            const Interval y = f(p);
            if (y.lo() > seg_lo) seg_lo = y.lo(), arg_lo = s;
            if (y.hi() > seg_hi) seg_hi = y.hi(), arg_hi = s;
            consider(p);
        }
        auto refine = [&](std::size_t s, bool lower) {
            const double lo = static_cast<double>(s == 0 ? 0 : s - 1) / static_cast<double>(S);
            const double hi = static_cast<double>(std::min(s + 1, S)) / static_cast<double>(S);
            const double t = golden_max(
                [&](double u) {
                    const Point p = lerp(a, b, u);
                    return lower ? f.lower(p) : f.upper(p);
                },
                lo, hi);
            consider(lerp(a, b, t));
        };
        refine(arg_lo, true);
        refine(arg_hi, false);
        // Where the segment crosses the boundary of omega.
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double da = b[i] - a[i];
            if (da == 0.0) continue;
            for (double c : {omega.lower[i], omega.upper[i]}) {
                const double s = (c - a[i]) / da;
                if (s < 0.0 || s > 1.0) continue;
                Point p = lerp(a, b, s);
                p[i] = c;
                if (on_box(omega, p)) consider(p);
            }
        }
    }
    out.value = Interval(best_lo, best_hi);
    return out;
}

Interval boundary_infimum(const IntervalFn& f, const Box& omega, std::size_t boundary_grid) {
    const std::size_t n = omega.lower.size();
    const std::size_t g = std::max<std::size_t>(boundary_grid, 2);
    double per_face = 1.0;
    for (std::size_t i = 1; i < n; ++i) per_face *= static_cast<double>(g);
    if (per_face * 2.0 * static_cast<double>(n) > 1e6) {
        throw Error(ErrorKind::InvalidArgument, "boundary sampling would exceed 1e6 points");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    Point p(n);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t axis = 0; axis < n; ++axis) {
        for (double c : {omega.lower[axis], omega.upper[axis]}) {
            std::fill(idx.begin(), idx.end(), 0);
            while (true) {
                for (std::size_t i = 0; i < n; ++i) {
                    p[i] = i == axis ? c
                                     : omega.lower[i] + (omega.upper[i] - omega.lower[i]) * static_cast<double>(idx[i]) /
                                                            static_cast<double>(g - 1);
                }
                const Interval y = f(p);
                lo = std::min(lo, y.lo());
                hi = std::min(hi, y.hi());
                std::size_t i = n;
                while (i-- > 0) {
                    if (i == axis) continue;
                    if (++idx[i] < g) break;
                    idx[i] = 0;
                }
                if (i == static_cast<std::size_t>(-1)) break;
            }
        }
    }
    return Interval(lo, hi);
}

MountainPassResult mountain_pass(const IntervalFn& f, const Point& p0, const Point& p1, const Box& omega,
                                 const MountainPassOptions& options) {
    const std::size_t n = p0.size();
    if (p1.size() != n || omega.lower.size() != n || omega.upper.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "p0, p1 and omega must have the same dimension");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(omega.lower[i] < omega.upper[i])) throw Error(ErrorKind::InvalidArgument, "omega must be nonempty");
    }
    if (!strictly_inside(omega, p0)) throw Error(ErrorKind::InvalidArgument, "p0 must lie inside omega", Witness{{p0}, {}});
    if (on_box(omega, p1)) throw Error(ErrorKind::InvalidArgument, "p1 must lie outside omega", Witness{{p1}, {}});

    MountainPassResult r;
    r.alpha = boundary_infimum(f, omega, options.boundary_grid);
    for (const Point* p : {&p0, &p1}) {
        const Interval y = f(*p);
        if (!strictly_below(y, r.alpha)) {
            std::ostringstream os;
            os << "f(" << (p == &p0 ? "p0" : "p1") << ") = " << y << " is not strictly below alpha = " << r.alpha;
            throw Error(ErrorKind::Hypothesis, os.str(), Witness{{*p}, {y, r.alpha}});
        }
    }

    const std::size_t m = options.nodes;
    const double span = euclidean(p0, p1);
    auto make_path = [&](const std::vector<double>& theta) {
        PathSpec path{p0, p1, {}};
        for (std::size_t k = 0; k < m; ++k) path.nodes.emplace_back(theta.begin() + k * n, theta.begin() + (k + 1) * n);
        return path;
    };
    std::vector<double> straight(m * n);
    for (std::size_t k = 0; k < m; ++k) {
        const Point q = lerp(p0, p1, static_cast<double>(k + 1) / static_cast<double>(m + 1));
        std::copy(q.begin(), q.end(), straight.begin() + k * n);
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(-0.5 * span, 0.5 * span);
    std::vector<std::vector<double>> starts{straight};
    for (std::size_t s = 1; s < options.restarts; ++s) {
        auto theta = straight;
        for (double& c : theta) c += jitter(rng);
        starts.push_back(std::move(theta));
    }

    auto evaluate = [&](const std::vector<double>& theta) {
        const PathValue pv = path_value(f, make_path(theta), omega, options.segment_samples);
        ++r.paths_evaluated;
        if (!weakly_below(r.alpha, pv.value)) ++r.alpha_violations;
        return pv;
    };

    r.stabilized = true;
    for (int which = 0; which < 2; ++which) {
        const bool lower = which == 0;
        auto key = [lower](const PathValue& pv) { return lower ? pv.value.lo() : pv.value.hi(); };
        double best = std::numeric_limits<double>::infinity();
        PathValue best_value;
        std::vector<double> best_theta;
        for (const auto& start : starts) {
            auto theta = start;
            PathValue cur = evaluate(theta);
            std::size_t used = 1;
            double step = 0.25 * span;
            bool stable = m == 0;
            while (!stable && used < options.budget) {
                bool improved = false;
                for (std::size_t j = 0; j < theta.size() && used < options.budget; ++j) {
                    for (double sgn : {1.0, -1.0}) {
                        auto trial = theta;
                        trial[j] += sgn * step;
                        const PathValue pv = evaluate(trial);
                        ++used;
                        if (key(pv) < key(cur)) {
                            theta = std::move(trial);
                            cur = pv;
                            improved = true;
                            break;
                        }
                    }
                }
                if (!improved) {
                    step *= 0.5;
                    if (step < options.min_step) stable = true;
                }
            }
            r.stabilized = r.stabilized && stable;
            if (key(cur) < best) {
                best = key(cur);
                best_value = cur;
                best_theta = theta;
            }
        }
        if (lower) {
            r.argmax_lower = best_value.argmax_lower;
            r.path_lower = make_path(best_theta);
            r.value = Interval(best, std::max(best, best_value.value.hi()));
        } else {
            r.argmax_upper = best_value.argmax_upper;
            r.path_upper = make_path(best_theta);
            double lo = r.value.lo();
            // The upper-optimal path bounds the lower value too.
            if (best_value.value.lo() < lo) {
                lo = best_value.value.lo();
                r.argmax_lower = best_value.argmax_lower;
                r.path_lower = r.path_upper;
            }
            r.value = Interval(lo, best);
        }
    }
    return r;
}

}  // namespace ivelvp
