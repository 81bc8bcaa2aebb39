#include "ivelvp/ekeland.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace ivelvp {

namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must be a positive finite number");
    }
}

Interval penalized(const Interval& v, double eps_d) { return shifted(v, eps_d); }

std::size_t finite_index(const IntervalFn& f, std::size_t i, const char* what) {
    if (!f.domain().is_finite()) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs a finite metric space");
    }
    if (i >= f.domain().finite_points().coords.size()) {
        throw Error(ErrorKind::InvalidArgument, "start index out of range");
    }
    return i;
}

}  // namespace

DescentResult ekeland_descent(std::span<const Interval> values, const IndexMetric& dist, double epsilon,
                              std::size_t start, std::size_t max_iterations) {
    require_epsilon(epsilon);
    if (start >= values.size()) throw Error(ErrorKind::InvalidArgument, "start index out of range");
    DescentResult r;
    std::size_t x = start;
    r.path.push_back(x);
    for (std::size_t it = 0;; ++it) {
        std::size_t best = x;
        double best_key = std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < values.size(); ++y) {
            if (y == x) continue;
            if (!weakly_below(penalized(values[y], epsilon * dist(x, y)), values[x])) continue;
            const double key = values[y].lo() + values[y].hi();
            if (key < best_key) {
                best_key = key;
                best = y;
            }
        }
        if (best == x) break;
        if (it >= max_iterations) {
            r.capped = true;
            break;
        }
        x = best;
        r.path.push_back(x);
    }
    r.x_bar = x;
    return r;
}

IndexCertificate certify_ekeland(std::span<const Interval> values, const IndexMetric& dist, double epsilon,
                                 std::size_t x0, std::size_t x_bar) {
    IndexCertificate c;
    c.x0 = x0;
    c.x_bar = x_bar;
    c.epsilon = epsilon;
    c.infimum = infimum_of(values);
    c.distance = dist(x0, x_bar);
    c.premise_holds = values[x0].lo() <= c.infimum.lo() + epsilon && values[x0].hi() <= c.infimum.hi() + epsilon;
    c.cond_a = weakly_below(values[x_bar], values[x0]);
    if (c.premise_holds) c.cond_b = c.distance <= 1.0;
    c.strict_c = true;
    for (std::size_t x = 0; x < values.size(); ++x) {
        const Interval p = penalized(values[x], epsilon * dist(x_bar, x));
        const OrderVerdict v = compare(p, values[x_bar]);
        if (x != x_bar && v.le && !c.cond_c_witness) c.cond_c_witness = x;
        if (v.lt) c.strict_c = false;
    }
    return c;
}

EkelandCertificate ekeland_minimize(std::span<const Point> points, std::span<const Interval> values,
                                    const IndexMetric& dist, double epsilon, std::size_t x0,
                                    std::size_t max_iterations, const std::string& description) {
    require_epsilon(epsilon);
    if (values.size() != points.size()) throw Error(ErrorKind::InvalidArgument, "one value per point is required");
    const DescentResult r = ekeland_descent(values, dist, epsilon, x0, max_iterations);
    if (r.capped) {
        Witness w;
        for (std::size_t i : r.path) w.points.push_back(points[i]);
        throw Error(ErrorKind::Internal,
                    "descent did not terminate within " + std::to_string(max_iterations) + " iterations",
                    std::move(w));
    }
    const IndexCertificate c = certify_ekeland(values, dist, epsilon, x0, r.x_bar);
    EkelandCertificate out;
    out.x_bar = points[c.x_bar];
    out.x0 = points[c.x0];
    out.epsilon = c.epsilon;
    out.value_x_bar = values[c.x_bar];
    out.value_x0 = values[c.x0];
    out.infimum = c.infimum;
    out.distance = c.distance;
    out.premise_holds = c.premise_holds;
    out.cond_a = c.cond_a;
    out.cond_b = c.cond_b;
    if (c.cond_c_witness) out.cond_c_witness = points[*c.cond_c_witness];
    out.strict_c = c.strict_c;
    out.verified_over = description;
    out.evaluated = points.size();
    for (std::size_t i : r.path) out.trace.push_back(points[i]);
    return out;
}

EkelandCertificate ekeland_minimize(const PointSet& set, std::span<const Interval> values, double epsilon,
                                    std::size_t x0, std::size_t max_iterations) {
    const IndexMetric d = [&set](std::size_t i, std::size_t j) { return set.dist(i, j); };
    return ekeland_minimize(set.points(), values, d, epsilon, x0, max_iterations, set.description());
}

EkelandCertificate ekeland_minimize(const IntervalFn& f, double epsilon, std::span<const double> x0) {
    require_epsilon(epsilon);
    const Domain& dom = f.domain();
    if (x0.size() != dom.dim()) throw Error(ErrorKind::InvalidArgument, "x0 has the wrong dimension");
    if (!dom.contains(x0)) throw Error(ErrorKind::Domain, "x0 is outside the domain", Witness{{Point(x0.begin(), x0.end())}, {}});
    const Point start(x0.begin(), x0.end());
    const PointSet set = dom.is_box() ? dom.enumerate(std::span<const Point>(&start, 1)) : dom.enumerate();
    const auto values = sample(f, set);
    // Strict descent visits every point at most once on a finite space.
    const std::size_t cap = dom.is_box() ? kBoxIterationCap : set.size() + 1;
    return ekeland_minimize(set, values, epsilon, set.index_of(start), cap);
}

namespace {

// Grid coordinates carry rounding; a one-ulp excess is not a violation.
bool exceeds(double lhs, double rhs) { return lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs)); }

bool triangle_fails(const Interval& xz, const Interval& xy, const Interval& yz) {
    return exceeds(xz.lo(), xy.lo() + yz.lo()) || exceeds(xz.hi(), xy.hi() + yz.hi());
}

}  // namespace

TriangleCheck check_triangle(std::size_t n, const IndexBifunction& F, std::uint64_t seed,
                             std::size_t exhaustive_limit, std::size_t samples) {
    TriangleCheck t;
    auto check = [&](std::size_t x, std::size_t y, std::size_t z) {
        ++t.triples_checked;
        if (triangle_fails(F(x, z), F(x, y), F(y, z))) {
            t.holds = false;
            t.witness = std::array<std::size_t, 3>{x, y, z};
            return false;
        }
        return true;
    };
    for (std::size_t x = 0; x < n; ++x) {
        if (!check(x, x, x)) return t;
    }
    if (n <= exhaustive_limit) {
        std::vector<Interval> table(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) table[i * n + j] = F(i, j);
        }
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                const Interval& xy = table[x * n + y];
                for (std::size_t z = 0; z < n; ++z) {
                    ++t.triples_checked;
                    const Interval& yz = table[y * n + z];
                    const Interval& xz = table[x * n + z];
                    if (triangle_fails(xz, xy, yz)) {
                        t.holds = false;
                        t.witness = std::array<std::size_t, 3>{x, y, z};
                        return t;
                    }
                }
            }
        }
        return t;
    }
    t.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
        if (!check(x, y, z)) return t;
    }
    return t;
}

BifunctionCertificate ekeland_bifunction(std::size_t n, const IndexBifunction& F, const IndexMetric& dist,
                                         double epsilon, std::size_t x0, const BifunctionOptions& options) {
    require_epsilon(epsilon);
    if (x0 >= n) throw Error(ErrorKind::InvalidArgument, "x0 index out of range");
    BifunctionCertificate c;
    c.x0 = x0;
    c.epsilon = epsilon;
    c.triangle = check_triangle(n, F, options.seed);
    if (!c.triangle.holds && options.require_triangle) {
        const auto& w = *c.triangle.witness;
        std::ostringstream os;
        os << "triangle inequality fails at (" << w[0] << ", " << w[1] << ", " << w[2] << ")";
        throw Error(ErrorKind::Hypothesis, os.str(),
                    Witness{{{double(w[0])}, {double(w[1])}, {double(w[2])}},
                            {F(w[0], w[2]), F(w[0], w[1]) + F(w[1], w[2])}});
    }
    if (c.triangle.holds && c.triangle.exhaustive) {
        for (std::size_t x = 0; x < n; ++x) {
            if (!weakly_below(Interval(0.0, 0.0), F(x, x))) {
                throw Error(ErrorKind::Internal, "F(x,x) is below [0,0] although the triangle check passed");
            }
        }
    }

    std::vector<Interval> row(n);
    for (std::size_t y = 0; y < n; ++y) row[y] = F(x0, y);
    const Interval zero(0.0, 0.0);
    std::size_t x = x0;
    c.trace.push_back(x);
    for (std::size_t it = 0;; ++it) {
        std::size_t best = x;
        double best_key = std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            if (!weakly_below(penalized(F(x, y), epsilon * dist(x, y)), zero)) continue;
            const double key = row[y].lo() + row[y].hi();
            if (key < best_key) {
                best_key = key;
                best = y;
            }
        }
        if (best == x) break;
        if (it >= options.max_iterations) {
            throw Error(ErrorKind::Internal, "bifunction descent did not terminate within " +
                                                 std::to_string(options.max_iterations) + " iterations");
        }
        x = best;
        c.trace.push_back(x);
    }
    c.x_bar = x;
    c.cond_a = weakly_below(row[x], row[x0]);
    c.strict_b = true;
    for (std::size_t y = 0; y < n; ++y) {
        const Interval p = penalized(F(x, y), epsilon * dist(x, y));
        const OrderVerdict v = compare(p, zero);
        if (y != x && v.le && !c.cond_b_witness) c.cond_b_witness = y;
        if (v.lt) c.strict_b = false;
    }
    return c;
}

CaristiResult caristi_fixed_point(const std::vector<std::vector<std::size_t>>& T, const IntervalFn& f,
                                  std::size_t start) {
    finite_index(f, start, "Caristi fixed point");
    const PointSet set = f.domain().enumerate();
    if (T.size() != set.size()) throw Error(ErrorKind::InvalidArgument, "T needs one image list per point");
    const auto values = sample(f, set);
    for (std::size_t x = 0; x < T.size(); ++x) {
        if (T[x].empty()) {
            throw Error(ErrorKind::InvalidArgument, "T(" + set.label(x) + ") is empty", Witness{{set[x]}, {}});
        }
        for (std::size_t y : T[x]) {
            if (y >= set.size()) throw Error(ErrorKind::InvalidArgument, "T refers to an unknown point");
            if (!weakly_below(penalized(values[y], set.dist(x, y)), values[x])) {
                throw Error(ErrorKind::Hypothesis,
                            "f(y) + d(x,y) is not below f(x) for x=" + set.label(x) + ", y=" + set.label(y),
                            Witness{{set[x], set[y]}, {values[x], values[y]}});
            }
        }
    }
    CaristiResult r;
    r.certificate = ekeland_minimize(set, values, 1.0, start, set.size() + 1);
    r.index = set.index_of(r.certificate.x_bar);
    r.fixed_point = r.certificate.x_bar;
    if (std::find(T[r.index].begin(), T[r.index].end(), r.index) == T[r.index].end()) {
        throw Error(ErrorKind::Internal, "descent end point is not a fixed point of T", Witness{{r.fixed_point}, {}});
    }
    return r;
}

TakahashiResult takahashi_minimize(const IntervalFn& f, std::size_t start) {
    finite_index(f, start, "Takahashi minimization");
    const PointSet set = f.domain().enumerate();
    const auto values = sample(f, set);
    const auto minimal = minimal_indices(values);
    std::vector<char> is_min(set.size(), 0);
    for (std::size_t i : minimal) is_min[i] = 1;
    for (std::size_t x = 0; x < set.size(); ++x) {
        if (is_min[x]) continue;
        bool moves = false;
        for (std::size_t y = 0; y < set.size() && !moves; ++y) {
            moves = y != x && weakly_below(penalized(values[y], set.dist(x, y)), values[x]);
        }
        if (!moves) {
            throw Error(ErrorKind::Hypothesis, "no admissible move from the non-minimal point " + set.label(x),
                        Witness{{set[x]}, {values[x]}});
        }
    }
    TakahashiResult r;
    r.certificate = ekeland_minimize(set, values, 1.0, start, set.size() + 1);
    r.index = set.index_of(r.certificate.x_bar);
    r.minimal_point = r.certificate.x_bar;
    if (!is_min[r.index]) {
        throw Error(ErrorKind::Internal, "descent end point is not minimal", Witness{{r.minimal_point}, {}});
    }
    return r;
}

std::string to_string(CriticalVerdict v) {
    switch (v) {
        case CriticalVerdict::Critical: return "critical";
        case CriticalVerdict::NotCritical: return "not-critical";
        case CriticalVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

CriticalReport critical_point_check(const IntervalFn& f, std::span<const double> x, std::span<const Point> directions,
                                    double tol, const StepSchedule& schedule) {
    CriticalReport r;
    bool all_converged = true;
    bool all_zero = true;
    for (const auto& h : directions) {
        DirectionReport d;
        d.direction = h;
        d.derivative = gateaux(f, x, h, schedule);
        d.contains_zero = contains_zero(d.derivative.value, tol);
        if (!d.derivative.converged) {
            all_converged = false;
        } else if (!d.contains_zero) {
            all_zero = false;
        }
        r.directions.push_back(std::move(d));
    }
    if (!all_zero) {
        r.verdict = CriticalVerdict::NotCritical;
    } else if (!all_converged) {
        r.verdict = CriticalVerdict::Inconclusive;
    } else {
        r.verdict = CriticalVerdict::Critical;
    }
    return r;
}

std::vector<Point> axis_directions(std::size_t n) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) {
        Point e(n, 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(e);
    }
    return out;
}

StationaryReport stationary_sequence(const IntervalFn& f, std::span<const double> epsilons, std::span<const double> start,
                                     const StepSchedule& schedule) {
    StationaryReport r;
    r.infimum = infimum(f).value;
    const auto dirs = axis_directions(f.domain().dim());
    Point x(start.begin(), start.end());
    for (double eps : epsilons) {
        StationaryIterate it;
        it.epsilon = eps;
        it.certificate = ekeland_minimize(f, eps, x);
        x = it.certificate.x_bar;
        it.x = x;
        it.value = it.certificate.value_x_bar;
        it.near_infimum = weakly_below(it.value, shifted(r.infimum, eps));
        for (const auto& h : dirs) {
            StationaryDirection d;
            d.direction = h;
            d.derivative = gateaux(f, x, h, schedule);
            const Interval& g = d.derivative.value;
            d.contains_zero = contains_zero(g);
            d.within_band = -eps <= g.lo() && g.hi() <= eps;
            // A derivative sitting on the band edge must not flip on extrapolation error.
            const double slack = std::max(d.derivative.residual, schedule.tol);
            d.not_below_band = !strictly_below(g, Interval(-eps - slack, -eps - slack));
            it.directions.push_back(std::move(d));
        }
        r.iterates.push_back(std::move(it));
    }
    if (!r.iterates.empty()) {
        const auto& last = r.iterates.back();
        r.final_value_gap = hausdorff(last.value, r.infimum);
        for (const auto& d : last.directions) {
            r.final_derivative_gap = std::max(r.final_derivative_gap, hausdorff(d.derivative.value, Interval(0.0, 0.0)));
        }
    }
    return r;
}

std::string to_string(ProbeVerdict v) { return v == ProbeVerdict::HeuristicPass ? "HEURISTIC-PASS" : "FAIL"; }

PalaisSmaleReport palais_smale_probe(const IntervalFn& f, std::span<const Point> sequence,
                                     const PalaisSmaleOptions& options) {
    PalaisSmaleReport r;
    if (sequence.empty()) return r;
    const std::size_t n = sequence.size();
    r.cutoff = n / 2;
    std::vector<Interval> values;
    for (const auto& x : sequence) values.push_back(f(x));
    auto magnitude = [](const Interval& a) { return std::max(std::abs(a.lo()), std::abs(a.hi())); };

    bool bounded;
    if (options.level) {
        bounded = hausdorff(values.back(), *options.level) <= options.value_tol;
    } else {
        double head = 0.0, tail = 0.0;
        for (std::size_t i = 0; i < r.cutoff; ++i) head = std::max(head, magnitude(values[i]));
        for (std::size_t i = r.cutoff; i < n; ++i) tail = std::max(tail, magnitude(values[i]));
        bounded = r.cutoff == 0 || tail <= 2.0 * head + 1.0;
    }
    r.bounded = bounded ? ProbeVerdict::HeuristicPass : ProbeVerdict::Fail;

    const auto dirs = options.directions.empty() ? axis_directions(sequence.front().size()) : options.directions;
    bool small = true;
    for (std::size_t i = r.cutoff; i < n && small; ++i) {
        for (const auto& h : dirs) {
            const GHDerivative d = gateaux(f, sequence[i], h, options.schedule);
            const bool ok = d.converged && (contains_zero(d.value, 1e-9) ||
                                            hausdorff(d.value, Interval(0.0, 0.0)) <= options.derivative_tol);
            if (!ok) {
                small = false;
                break;
            }
        }
    }
    r.derivative = small ? ProbeVerdict::HeuristicPass : ProbeVerdict::Fail;

    for (std::size_t i = r.cutoff; i < n && !r.cluster_pair; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (euclidean(sequence[i], sequence[j]) <= options.cluster_tol) {
                r.cluster_pair = std::array<std::size_t, 2>{i, j};
                break;
            }
        }
    }
    r.cluster = r.cluster_pair ? ProbeVerdict::HeuristicPass : ProbeVerdict::Fail;
    r.passed = !(bounded && small) || r.cluster_pair.has_value();
    return r;
}

}  // namespace ivelvp
