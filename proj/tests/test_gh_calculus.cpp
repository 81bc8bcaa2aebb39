#include <doctest.h>

#include <cmath>
#include <random>

#include "ivelvp/gh_calculus.hpp"
#include "oracles.hpp"

using namespace ivelvp;

namespace {

IntervalFn fn(const std::string& lo, const std::string& hi) {
    return IntervalFn::from_exprs(Expr::parse(lo, {"x"}), Expr::parse(hi, {"x"}), Domain::box({-10}, {10}, 3));
}

Interval d1(const IntervalFn& f, double x, double h) {
    const Point xs{x};
    const Point hs{h};
    return gateaux(f, xs, hs).value;
}

}  // namespace

TEST_CASE("closed-form directional derivatives") {
    const auto bump = fn("1/(x^2+1)", "1/(x^2+1)+1");
    const auto spread = fn("-x", "x");
    const auto square = fn("-x^2", "x^2");
    CHECK(hausdorff(d1(bump, 1, 1), {-0.5, -0.5}) < 1e-6);
    CHECK(hausdorff(d1(spread, 0.5, 1), {-1, 1}) < 1e-6);
    CHECK(hausdorff(d1(square, 1, 1), {-2, 2}) < 1e-6);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 50; ++k) {
        const double x = u(rng);
        const double h = u(rng);
        const double b = -2 * h * x / ((x * x + 1) * (x * x + 1));
        CHECK(hausdorff(d1(bump, x, h), {b, b}) <= 1e-5);
        CHECK(hausdorff(d1(spread, std::abs(x) / 3 + 0.01, std::abs(h)), {-std::abs(h), std::abs(h)}) <= 1e-5);
        const double s = std::abs(2 * h * x);
        CHECK(hausdorff(d1(square, x, h), {-s, s}) <= 1e-5);
    }
}

TEST_CASE("degenerate functions agree with central differences") {
    const auto f = fn("sin(x) + x^3/10", "sin(x) + x^3/10");
    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
        for (double h : {-1.0, 0.5, 2.0}) {
            const double e = 1e-5;
            const double fd = ((std::sin(x + e * h) + std::pow(x + e * h, 3) / 10) -
                               (std::sin(x - e * h) + std::pow(x - e * h, 3) / 10)) /
                              (2 * e);
            const Interval d = d1(f, x, h);
            CHECK(d.lo() == doctest::Approx(fd).epsilon(1e-6));
            CHECK(d.hi() == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("derivative reports the step sequence") {
    const auto f = fn("x^2", "x^2 + 1");
    const Point x{1};
    const Point h{1};
    const auto d = gateaux(f, x, h);
    CHECK(d.converged);
    CHECK_FALSE(d.t_sequence.empty());
    CHECK(d.residual <= 1e-6);
}

TEST_CASE("generalized derivative of interval curves") {
    const IntervalCurve grow{[](double t) { return t; }, [](double t) { return 2 * t; }, 0, 4};
    const auto i = generalized_derivative(grow, 1, DiffMode::I);
    REQUIRE(i.value);
    CHECK(hausdorff(*i.value, {1, 2}) < 1e-9);
    const auto ii = generalized_derivative(grow, 1, DiffMode::II);
    CHECK_FALSE(ii.value);
    CHECK_FALSE(ii.failure.empty());

    const IntervalCurve shrink{[](double t) { return t; }, [](double t) { return 4 - t; }, 0, 2};
    const auto s = generalized_derivative(shrink, 1, DiffMode::II);
    REQUIRE(s.value);
    CHECK(hausdorff(*s.value, {-1, 1}) < 1e-9);
    CHECK_FALSE(generalized_derivative(shrink, 1, DiffMode::I).value);
    CHECK_FALSE(generalized_derivative(shrink, 0, DiffMode::II).value);
}

TEST_CASE("Aumann integral equals the endpoint integrals") {
    const IntervalCurve c{[](double t) { return std::sin(t); }, [](double t) { return std::sin(t) + t * t; }, 0, 3};
    const Interval got = aumann_integral(c, 0, 3);
    const double lo = 1 - std::cos(3.0);
    CHECK(got.lo() == doctest::Approx(lo).epsilon(1e-10));
    CHECK(got.hi() == doctest::Approx(lo + 9).epsilon(1e-10));
    CHECK(simpson([](double t) { return t * t * t; }, 0, 2, 2) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(simpson([](double t) { return std::exp(t); }, 0, 1, 64) ==
          doctest::Approx(oracle::simpson([](double t) { return std::exp(t); }, 0, 1, 64)).epsilon(1e-14));
}
