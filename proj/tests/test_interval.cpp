#include <doctest.h>

#include <random>

#include "ivelvp/error.hpp"
#include "ivelvp/interval.hpp"
#include "oracles.hpp"

using namespace ivelvp;

namespace {

Interval lift(oracle::Iv a) { return Interval(a.lo, a.hi); }

bool same(const Interval& a, oracle::Iv b, double tol = 1e-12) {
    return std::abs(a.lo() - b.lo) <= tol && std::abs(a.hi() - b.hi) <= tol;
}

}  // namespace

TEST_CASE("constructor rejects inverted and non-finite endpoints") {
    CHECK_THROWS_AS(Interval(2, 1), Error);
    CHECK_THROWS_AS(Interval(0, INFINITY), Error);
    CHECK_THROWS_AS(Interval(NAN, 1), Error);
    CHECK_NOTHROW(Interval(1, 1));
}

TEST_CASE("worked values") {
    CHECK(add({1, 3}, {-3, 0}) == Interval(-2, 3));
    CHECK(add({1, 3}, {2, 5}) == Interval(3, 8));
    CHECK(add({1, 3}, {0, 0}) == Interval(1, 3));
    CHECK(scalar_mul(2, {1, 3}) == Interval(2, 6));
    CHECK(scalar_mul(-1, {1, 2}) == Interval(-2, -1));
    CHECK(scalar_mul(0, {1, 2}) == Interval(0, 0));
    CHECK(gh_diff({1, 3}, {1, 2}) == Interval(0, 1));
    CHECK(gh_diff({1, 3}, {1, 3}) == Interval(0, 0));
    CHECK(gh_diff({1, 3}, {2, 3}) == Interval(-1, 0));
    CHECK(hausdorff({1, 3}, {2, 3}) == 1.0);
    CHECK(hausdorff({1, 3}, {1, 3}) == 0.0);
    CHECK(hausdorff(scalar_mul(-2, {0, 1}), scalar_mul(-2, {1, 3})) == 4.0);
}

TEST_CASE("Hukuhara difference exists only when the width allows") {
    const auto c = hukuhara_diff({0, 3}, {0, 1});
    REQUIRE(c);
    CHECK(*c == Interval(0, 2));
    CHECK(*hukuhara_diff({1, 3}, {1, 3}) == Interval(0, 0));
    CHECK_FALSE(hukuhara_diff({0, 1}, {0, 3}));
}

TEST_CASE("orders") {
    auto v = compare({1, 3}, {2, 3});
    CHECK(v.le);
    CHECK_FALSE(v.lt);
    CHECK(v.not_lt());
    CHECK(compare({0, 2}, {0, 3}).le);
    v = compare({-2, 3}, {1, 2});
    CHECK_FALSE(v.le);
    CHECK(v.not_le());
    CHECK(compare({0, 1}, {2, 3}).lt);
}

TEST_CASE("contains_zero with tolerance") {
    CHECK(contains_zero({-1, 1}, 0));
    CHECK_FALSE(contains_zero({0.5, 1}, 0));
    CHECK(contains_zero({1e-12, 2}, 1e-9));
    CHECK_FALSE(contains_zero({1e-12, 2}, 0));
}

TEST_CASE("random tuples against the endpoint formulas") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 10000; ++k) {
        const auto a = oracle::random_interval(rng);
        const auto b = oracle::random_interval(rng);
        const auto c = oracle::random_interval(rng);
        const Interval A = lift(a), B = lift(b), C = lift(c);
        REQUIRE(same(gh_diff(A, B), oracle::gh(a, b)));
        REQUIRE(gh_diff(B, A) == scalar_mul(-1, gh_diff(A, B)));
        REQUIRE(hausdorff(A, B) == doctest::Approx(oracle::dH(a, b)).epsilon(1e-15));
        REQUIRE(hausdorff(A, B) == hausdorff(B, A));
        REQUIRE(hausdorff(A, C) <= hausdorff(A, B) + hausdorff(B, C) + 1e-12);
        REQUIRE(std::abs(hausdorff(A + C, B + C) - hausdorff(A, B)) <= 1e-12);
        const auto v = compare(A, B);
        REQUIRE(v.le == oracle::le(a, b));
        REQUIRE(v.lt == oracle::lt(a, b));
        if (v.lt) REQUIRE(v.le);
    }
}
