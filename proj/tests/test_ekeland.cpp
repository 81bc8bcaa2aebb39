#include <doctest.h>

#include <cmath>
#include <random>

#include "ivelvp/ekeland.hpp"
#include "oracles.hpp"

using namespace ivelvp;

namespace {

IntervalFn fn(const std::string& lo, const std::string& hi, Domain d) {
    return IntervalFn::from_exprs(Expr::parse(lo, {"x"}), Expr::parse(hi, {"x"}), std::move(d));
}

const char* kExpLower = "ite(x < 0, exp(x), ite(x == 0, 0.5, exp(-x)))";
const char* kExpUpper = "ite(x < 0, exp(x) + 1, ite(x == 0, 1.5, exp(-x) + 1))";

struct Instance {
    std::vector<Point> points;
    std::vector<oracle::Iv> raw;
    std::vector<Interval> values;
    oracle::Dist dist;
};

Instance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size(2, 30);
    std::uniform_real_distribution<double> coord(0, 3);
    Instance in;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
        in.points.push_back({coord(rng), coord(rng)});
        in.raw.push_back(oracle::random_interval(rng, 0, 4));
        in.values.emplace_back(in.raw.back().lo, in.raw.back().hi);
    }
    in.dist.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            in.dist[i][j] = std::hypot(in.points[i][0] - in.points[j][0], in.points[i][1] - in.points[j][1]);
        }
    }
    return in;
}

}  // namespace

TEST_CASE("random finite spaces agree with the exhaustive checker") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> eps_dist(0.05, 2);
    for (int k = 0; k < 200; ++k) {
        const Instance in = random_instance(rng);
        const double eps = eps_dist(rng);
        const std::size_t x0 = rng() % in.points.size();
        const IndexMetric d = [&](std::size_t i, std::size_t j) { return in.dist[i][j]; };
        const auto c = ekeland_minimize(in.points, in.values, d, eps, x0, in.points.size() + 1, "test");
        std::size_t xbar = 0;
        while (in.points[xbar] != c.x_bar) ++xbar;
        const auto o = oracle::ekeland_check(in.raw, in.dist, eps, x0, xbar);
        INFO("instance " << k);
        REQUIRE(o.a);
        REQUIRE(o.c);
        REQUIRE(o.strict);
        if (o.premise) REQUIRE(*o.b);
        REQUIRE(c.cond_a == o.a);
        REQUIRE(c.premise_holds == o.premise);
        REQUIRE(c.cond_b == o.b);
        REQUIRE(c.cond_c_witness.has_value() == !o.c);
        REQUIRE(c.strict_c == o.strict);
        REQUIRE(c.verified());
    }
}

TEST_CASE("certificate reports a failing candidate") {
    const std::vector<Interval> v{{0, 1}, {2, 3}, {5, 6}};
    const IndexMetric d = [](std::size_t i, std::size_t j) { return std::abs(double(i) - double(j)); };
    const auto c = certify_ekeland(v, d, 0.5, 2, 2);
    CHECK(c.cond_a);
    REQUIRE(c.cond_c_witness);
    CHECK(*c.cond_c_witness == 0);
    CHECK_FALSE(c.strict_c);
    CHECK_FALSE(c.premise_holds);
}

TEST_CASE("descent cap is reported") {
    std::vector<Interval> v;
    for (int i = 0; i < 50; ++i) v.emplace_back(50 - i, 51 - i);
    const IndexMetric d = [](std::size_t i, std::size_t j) { return i == j ? 0.0 : 0.01; };
    // Visiting one step at a time needs a metric where only the neighbour is
    // admissible; with the full set the argmin jumps to the end at once.
    const auto r = ekeland_descent(v, d, 1.0, 0, 0);
    CHECK(r.capped);
    const auto ok = ekeland_descent(v, d, 1.0, 0, 10);
    CHECK_FALSE(ok.capped);
    CHECK(ok.x_bar == 49);
}

TEST_CASE("piecewise exponential example") {
    const auto f = fn(kExpLower, kExpUpper, Domain::box({-10}, {10}, 10001));
    const Point x0{std::log(0.2)};
    const auto c = ekeland_minimize(f, 0.25, x0);
    CHECK(c.verified());
    CHECK(c.premise_holds);
    CHECK(c.x_bar == x0);  // nothing improves by the penalty from x0
    const Point xb{x0[0] - 1};
    const std::vector<Point> extra{x0, xb};
    const PointSet set = f.domain().enumerate(extra);
    const auto values = sample(f, set);
    const IndexMetric d = [&](std::size_t i, std::size_t j) { return set.dist(i, j); };
    const auto alt = certify_ekeland(values, d, 0.25, set.index_of(x0), set.index_of(xb));
    CHECK(alt.cond_a);
    CHECK(alt.distance <= 1 + 0.002);
    CHECK_FALSE(alt.cond_c_witness);
    CHECK(alt.strict_c);
}

TEST_CASE("epsilon and start validation") {
    const auto f = fn("x^2", "x^2 + 1", Domain::box({-1}, {1}, 11));
    const Point x0{0};
    CHECK_THROWS_AS(ekeland_minimize(f, 0, x0), Error);
    CHECK_THROWS_AS(ekeland_minimize(f, -1, x0), Error);
    const Point out{3};
    CHECK_THROWS_AS(ekeland_minimize(f, 0.1, out), Error);
}

TEST_CASE("bifunction form") {
    const std::size_t n = 21;
    auto x = [](std::size_t i) { return -1 + 0.1 * double(i); };
    const IndexMetric d = [&](std::size_t i, std::size_t j) { return std::abs(x(i) - x(j)); };
    const IndexBifunction F = [&](std::size_t i, std::size_t j) {
        const double a = std::abs(x(i) - x(j));
        return Interval(a, a + 1);
    };
    for (std::size_t x0 : {0u, 7u, 20u}) {
        const auto c = ekeland_bifunction(n, F, d, 0.5, x0);
        CHECK(c.triangle.holds);
        CHECK(c.triangle.exhaustive);
        CHECK(c.verified());
    }
    const IndexBifunction sq = [&](std::size_t i, std::size_t j) {
        const double a = (x(i) - x(j)) * (x(i) - x(j));
        return Interval(a, a);
    };
    const auto t = check_triangle(n, sq);
    CHECK_FALSE(t.holds);
    REQUIRE(t.witness);
    CHECK_THROWS_AS(ekeland_bifunction(n, sq, d, 0.5, 0), Error);
}

TEST_CASE("triangle check samples large spaces") {
    const IndexBifunction F = [](std::size_t i, std::size_t j) {
        const double a = std::abs(double(i) - double(j));
        return Interval(a, 2 * a);
    };
    const auto t = check_triangle(2000, F, 9);
    CHECK(t.holds);
    CHECK_FALSE(t.exhaustive);
    CHECK(t.triples_checked == 2000 + 10000);
}

TEST_CASE("Caristi fixed point") {
    const auto d = Domain::finite_euclidean({{0}, {1}, {2}, {3}}, {"a", "b", "c", "d"});
    const auto f = IntervalFn::tabulated(d, {{6, 8}, {4, 6}, {2, 4}, {0, 2}});
    const auto r = caristi_fixed_point({{1}, {2}, {3}, {3}}, f, 0);
    CHECK(r.index == 3);
    CHECK(r.certificate.verified());
    // c -> a climbs instead of descending.
    try {
        caristi_fixed_point({{1}, {2}, {0}, {3}}, f, 0);
        FAIL("expected a hypothesis error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
        CHECK(e.witness().points.size() == 2);
    }
    CHECK_THROWS_AS(caristi_fixed_point({{1}, {}, {3}, {3}}, f, 0), Error);
}

TEST_CASE("Takahashi minimal point") {
    const auto d = Domain::finite_euclidean({{0}, {1}, {2}, {3}}, {"p", "q", "r", "s"});
    const auto f = IntervalFn::tabulated(d, {{4, 6}, {2, 4}, {0.5, 2.5}, {1, 2}});
    const auto r = takahashi_minimize(f, 0);
    CHECK((r.index == 2 || r.index == 3));
    // q cannot reach a better point within its distance budget.
    const auto far = Domain::finite_euclidean({{0}, {10}}, {"p", "q"});
    const auto g = IntervalFn::tabulated(far, {{0, 1}, {2, 3}});
    try {
        takahashi_minimize(g, 1);
        FAIL("expected a hypothesis error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
    }
}

TEST_CASE("critical points") {
    const Domain box = Domain::box({-2}, {2}, 5);
    const auto spread = fn("-x", "x", box);
    const auto dirs = axis_directions(1);
    const Point half{0.5};
    CHECK(critical_point_check(spread, half, dirs, 1e-9).verdict == CriticalVerdict::Critical);
    const auto bowl = fn("x^2", "x^2 + 1", box);
    const Point one{1};
    const Point zero{0};
    CHECK(critical_point_check(bowl, one, dirs, 1e-9).verdict == CriticalVerdict::NotCritical);
    CHECK(critical_point_check(bowl, zero, dirs, 1e-9).verdict == CriticalVerdict::Critical);
    CHECK(to_string(CriticalVerdict::NotCritical) == "not-critical");
}

TEST_CASE("stationary sequence drifts to the infimum") {
    const auto f = fn("1/(x^2+1)", "1/(x^2+1)+1", Domain::box({-100}, {100}, 20001));
    const std::vector<double> eps{0.5, 0.25, 0.1, 0.05, 0.01, 0.005, 0.001};
    const Point start{0};
    const auto r = stationary_sequence(f, eps, start);
    REQUIRE(r.iterates.size() == eps.size());
    CHECK(r.final_value_gap <= 1e-2);
    CHECK(r.final_derivative_gap <= 1e-2);
    for (const auto& it : r.iterates) {
        CHECK(it.certificate.verified());
        for (const auto& d : it.directions) CHECK(d.not_below_band);
    }
}

TEST_CASE("Palais-Smale probe") {
    const auto square = fn("-x^2", "x^2", Domain::box({-2}, {2}, 5));
    std::vector<Point> bounded;
    for (int n = 1; n <= 200; ++n) bounded.push_back({(n % 2 ? -1.0 : 1.0) / n});
    const auto pass = palais_smale_probe(square, bounded);
    CHECK(pass.passed);
    CHECK(pass.cluster_pair);

    const auto bump = fn("1/(x^2+1)", "1/(x^2+1)+1", Domain::box({-1000}, {1000}, 5));
    std::vector<Point> escaping;
    for (int n = 1; n <= 200; ++n) escaping.push_back({5.0 * n});
    const auto fail = palais_smale_probe(bump, escaping);
    CHECK_FALSE(fail.passed);
    CHECK(fail.cluster == ProbeVerdict::Fail);
    CHECK(to_string(ProbeVerdict::HeuristicPass) == "HEURISTIC-PASS");
}
