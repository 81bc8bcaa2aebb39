#include <doctest.h>

#include <random>

#include "ivelvp/ivfunc.hpp"
#include "oracles.hpp"

using namespace ivelvp;

namespace {

IntervalFn fn(const std::string& lo, const std::string& hi, Domain d) {
    return IntervalFn::from_exprs(Expr::parse(lo, {"x"}), Expr::parse(hi, {"x"}), std::move(d));
}

}  // namespace

TEST_CASE("evaluation") {
    const auto f = fn("1/(x^2+1)", "1/(x^2+1)+1", Domain::box({-100}, {100}, 11));
    const Point x0{0};
    CHECK(f(x0) == Interval(1, 2));
    const auto g = fn("-x", "x", Domain::box({0}, {1}, 11));
    const Point h{0.5};
    CHECK(g(h) == Interval(-0.5, 0.5));
    const auto bad = fn("x", "-x", Domain::box({0}, {2}, 3));
    const Point one{1};
    CHECK_THROWS_AS(bad(one), Error);
}

TEST_CASE("infimum") {
    const auto c = fn("2", "5", Domain::box({-1}, {1}, 5));
    CHECK(infimum(c).value == Interval(2, 5));
    const auto b = fn("1/(x^2+1)", "1/(x^2+1)+1", Domain::box({-100}, {100}, 2001));
    const auto r = infimum(b);
    CHECK(hausdorff(r.value, {0, 1}) < 1e-3);
    CHECK_FALSE(r.exact);
    CHECK(r.lower_argmin.size() == 2);  // both ends of the box
}

TEST_CASE("minimal solutions by brute force") {
    const auto d = Domain::finite_euclidean({{-1}, {0}, {1}});
    const auto f = IntervalFn::tabulated(d, {{-1, 4}, {0, 3}, {1, 2}});
    CHECK(minimal_solutions(f).size() == 3);
    const auto c = IntervalFn::tabulated(d, {{1, 2}, {1, 2}, {1, 2}});
    CHECK(minimal_solutions(c).size() == 3);
    const auto u = IntervalFn::tabulated(d, {{0, 5}, {-1, 1}, {2, 3}});
    const auto m = minimal_solutions(u);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == Point{0});

    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        std::vector<Interval> v;
        std::vector<oracle::Iv> raw;
        for (int i = 0; i < 12; ++i) {
            raw.push_back(oracle::random_interval(rng));
            v.emplace_back(raw.back().lo, raw.back().hi);
        }
        std::vector<std::size_t> want;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            bool dominated = false;
            for (const auto& y : raw) dominated = dominated || oracle::lt(y, raw[i]);
            if (!dominated) want.push_back(i);
        }
        REQUIRE(minimal_indices(v) == want);
    }
}

TEST_CASE("lower semicontinuity probe") {
    const Domain d = Domain::box({-1}, {1}, 21);
    std::vector<ConvergentSequence> seqs(1);
    for (int n = 2; n <= 50; ++n) seqs[0].terms.push_back({1.0 / n});
    seqs[0].limit = {0};
    const auto smooth = fn("x^2", "x^2 + 1", d);
    CHECK(lsc_probe(smooth, {0.5, 2}, seqs).passed);
    // Upper endpoint jumps up at the limit: the sublevel set is not closed.
    const auto jump = fn("x^2", "ite(x == 0, 3, x^2 + 1)", d);
    CHECK_FALSE(lsc_probe(jump, {0.5, 2}, seqs).passed);
    CHECK(lsc_probe(jump, {0.5, 2}, {}).passed);
}
