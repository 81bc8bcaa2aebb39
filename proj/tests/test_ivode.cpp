#include <doctest.h>

#include <cmath>

#include "ivelvp/ivode.hpp"
#include "oracles.hpp"

using namespace ivelvp;

namespace {

StateFn constant(double c) {
    return [c](double, double, double, std::span<const double>) { return c; };
}

IntervalIVP ivp(StateFn lo, StateFn hi, Interval x0, double T, DiffMode mode, double step) {
    IntervalIVP p;
    p.lower = std::move(lo);
    p.upper = std::move(hi);
    p.x0 = x0;
    p.horizon = T;
    p.mode = mode;
    p.step = step;
    return p;
}

const PiecewiseConstantControl kNone = PiecewiseConstantControl::constant({}, 1);

}  // namespace

TEST_CASE("mode (i) constant dynamics") {
    const auto x = solve_ivp(ivp(constant(1), constant(2), {0, 0}, 1, DiffMode::I, 0.01), kNone);
    CHECK(x.complete);
    CHECK(x.valid_until == doctest::Approx(1.0));
    for (std::size_t k = 0; k < x.times.size(); ++k) {
        CHECK(std::abs(x.states[k].lo() - x.times[k]) < 1e-10);
        CHECK(std::abs(x.states[k].hi() - 2 * x.times[k]) < 1e-10);
    }
}

TEST_CASE("mode (ii) shrinking solution is cut where it degenerates") {
    const double h = 0.01;
    const auto x = solve_ivp(ivp(constant(0), constant(1), {0, 2}, 3, DiffMode::II, h), PiecewiseConstantControl::constant({}, 3));
    CHECK_FALSE(x.complete);
    CHECK(std::abs(x.valid_until - 2) <= h);
    for (std::size_t k = 0; k < x.times.size(); ++k) {
        CHECK(std::abs(x.states[k].lo() - x.times[k]) < 1e-9);
        CHECK(std::abs(x.states[k].hi() - 2) < 1e-9);
    }
}

TEST_CASE("degenerate exponential") {
    const StateFn lo = [](double, double xl, double, std::span<const double>) { return xl; };
    const StateFn hi = [](double, double, double xu, std::span<const double>) { return xu; };
    const auto x = solve_ivp(ivp(lo, hi, {1, 1}, 1, DiffMode::I, 0.01), kNone);
    CHECK(std::abs(x.states.back().lo() - std::exp(1.0)) < 1e-6);
    CHECK(std::abs(x.states.back().hi() - std::exp(1.0)) < 1e-6);
}

TEST_CASE("steps align with control pieces") {
    const PiecewiseConstantControl u({{0}, {1}, {0}}, 1);
    const auto x = solve_ivp(ivp(constant(1), constant(2), {0, 0}, 1, DiffMode::I, 0.1), u);
    CHECK(x.steps_per_piece % 2 == 0);
    CHECK((x.times.size() - 1) % 3 == 0);
    CHECK(x.times.back() == doctest::Approx(1.0));
}

TEST_CASE("cost functional") {
    const auto p = ivp(constant(1), constant(2), {0, 0}, 2, DiffMode::I, 0.01);
    const auto u = PiecewiseConstantControl::constant({0}, 2);
    CHECK(hausdorff(cost_functional(p, u, {constant(1), constant(2)}), {2, 4}) < 1e-12);
    // L = [xl, xu] integrates [t, 2t] to [2, 4] on [0, 2].
    const StateFn xl = [](double, double v, double, std::span<const double>) { return v; };
    const StateFn xu = [](double, double, double v, std::span<const double>) { return v; };
    CHECK(hausdorff(cost_functional(p, u, {xl, xu}), {2, 4}) < 1e-10);
    try {
        cost_functional(p, u, {constant(-1), constant(2)});
        FAIL("expected a hypothesis error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Hypothesis);
    }
    try {
        cost_functional(p, u, {constant(3), constant(2)});
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
    const auto cut = ivp(constant(0), constant(1), {0, 2}, 3, DiffMode::II, 0.01);
    CHECK_THROWS_AS(cost_functional(cut, PiecewiseConstantControl::constant({0}, 3), {constant(1), constant(2)}),
                    Error);
}

TEST_CASE("control family") {
    ControlFamily fam;
    fam.pieces = 2;
    fam.lower = {-1};
    fam.upper = {1};
    fam.levels = 5;
    CHECK(fam.size() == 25);
    for (std::size_t i = 0; i < fam.size(); ++i) CHECK(fam.index_of(fam.member(i)) == i);
    const PiecewiseConstantControl a({{0}, {0.5}}, 1);
    const PiecewiseConstantControl b({{1}, {-0.5}}, 1);
    CHECK(control_distance(a, b) == doctest::Approx(1.0));
    fam.levels = 101;
    fam.pieces = 3;
    CHECK_THROWS_AS(epsilon_minimal_control(ivp(constant(1), constant(2), {0, 0}, 1, DiffMode::I, 0.01),
                                            {constant(1), constant(2)}, 0.1, fam, fam.member(0)),
                    Error);
}

TEST_CASE("zero control is epsilon-minimal for control-free dynamics") {
    const auto p = ivp(constant(1), constant(2), {0, 0}, 1, DiffMode::I, 0.01);
    const StateFn lo = [](double, double xl, double, std::span<const double> u) { return u[0] * u[0] + 0.1 * xl; };
    const StateFn hi = [](double, double, double xu, std::span<const double> u) {
        return u[0] * u[0] + 0.1 * xu + 1;
    };
    ControlFamily fam;
    fam.pieces = 2;
    fam.lower = {-1};
    fam.upper = {1};
    fam.levels = 5;
    const PiecewiseConstantControl zero({{0}, {0}}, 1);
    const auto r = epsilon_minimal_control(p, {lo, hi}, 0.1, fam, zero);
    CHECK(r.control.values() == zero.values());
    CHECK(r.certificate.verified());
    CHECK(r.excluded.empty());
    // Full enumeration: no member beats zero by the penalty.
    const Interval j0 = cost_functional(p, zero, {lo, hi});
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto u = fam.member(i);
        if (u.values() == zero.values()) continue;
        const Interval j = cost_functional(p, u, {lo, hi});
        const double pen = 0.1 * control_distance(u, zero);
        CHECK_FALSE(oracle::le({j.lo() + pen, j.hi() + pen}, {j0.lo(), j0.hi()}));
    }
}

TEST_CASE("Lipschitz estimate on a linear field") {
    const StateFn lo = [](double, double xl, double, std::span<const double> u) { return 2 * xl + 3 * u[0]; };
    const StateFn hi = [](double, double, double xu, std::span<const double> u) { return 2 * xu + 3 * u[0]; };
    const auto p = ivp(lo, hi, {0, 0}, 1, DiffMode::I, 0.01);
    const auto e = lipschitz_estimate(p, {{0, 1}, {-1, 1}, {-1, 1}, {-1}, {1}});
    CHECK(e.k1 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(e.k2 == doctest::Approx(3.0).epsilon(1e-6));
}
